#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gramfield {

/// Distribution function on the real line, stored as a monotone polyline.
///
/// Points (x_k, F_k) have nondecreasing x and F. Between distinct abscissae F
/// is linearly interpolated; repeated abscissae encode a jump, and the value
/// at a jump is the last one listed (right-continuity). F = 0 left of the
/// first point and F = F_last right of the last one, so a tabulated CDF that
/// lost mass at its ends stays defective instead of gaining a jump.
///
/// An empirical CDF is the special case with two points per distinct sample
/// value and flat segments in between.
class DistributionFunction {
public:
    DistributionFunction() = default;

    /// Tabulated CDF; F is clipped into [0, 1] and made nondecreasing.
    static DistributionFunction from_table(std::vector<double> x, std::vector<double> F) {
        if (x.size() != F.size()) throw std::invalid_argument("DistributionFunction: size mismatch");
        if (x.empty()) throw std::invalid_argument("DistributionFunction: empty table");
        for (std::size_t k = 1; k < x.size(); ++k) {
            if (!(x[k] >= x[k - 1])) throw std::invalid_argument("DistributionFunction: abscissae not sorted");
        }
        double running = 0.0;
        for (auto& f : F) {
            if (std::isnan(f)) throw std::invalid_argument("DistributionFunction: NaN value");
            running = std::max(running, std::clamp(f, 0.0, 1.0));
            f = running;
        }
        DistributionFunction d;
        d.x_ = std::move(x);
        d.F_ = std::move(F);
        return d;
    }

    /// Empirical CDF of the samples (any order).
    static DistributionFunction from_samples(std::span<const double> samples) {
        if (samples.empty()) throw std::invalid_argument("DistributionFunction: no samples");
        std::vector<double> v(samples.begin(), samples.end());
        std::sort(v.begin(), v.end());
        const double total = static_cast<double>(v.size());
        DistributionFunction d;
        std::size_t i = 0;
        while (i < v.size()) {
            std::size_t j = i;
            while (j < v.size() && v[j] == v[i]) ++j;
            d.x_.push_back(v[i]);
            d.F_.push_back(static_cast<double>(i) / total);
            d.x_.push_back(v[i]);
            d.F_.push_back(j == v.size() ? 1.0 : static_cast<double>(j) / total);
            i = j;
        }
        return d;
    }

    const std::vector<double>& abscissae() const noexcept { return x_; }
    const std::vector<double>& values() const noexcept { return F_; }
    bool empty() const noexcept { return x_.empty(); }
    double total_mass() const noexcept { return F_.empty() ? 0.0 : F_.back(); }

    double operator()(double x) const {
        if (x_.empty() || x < x_.front()) return 0.0;
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        const auto k = static_cast<std::size_t>(it - x_.begin()) - 1;
        if (k + 1 == x_.size() || x_[k] == x) return F_[k];
        return interpolate(k, x);
    }

    /// lim_{y -> x^-} F(y).
    double left_limit(double x) const {
        if (x_.empty()) return 0.0;
        const auto it = std::lower_bound(x_.begin(), x_.end(), x);
        const auto k = static_cast<std::size_t>(it - x_.begin());
        if (k == 0) return 0.0;
        if (k == x_.size()) return F_.back();
        return interpolate(k - 1, x);
    }

private:
    double interpolate(std::size_t k, double x) const {
        const double w = (x - x_[k]) / (x_[k + 1] - x_[k]);
        return F_[k] + w * (F_[k + 1] - F_[k]);
    }

    std::vector<double> x_;
    std::vector<double> F_;
};

/// sup_x |F(x) - G(x)|.
inline double kolmogorov_distance(const DistributionFunction& F, const DistributionFunction& G) {
    double d = 0.0;
    const auto probe = [&](double x) {
        d = std::max({d, std::abs(F(x) - G(x)), std::abs(F.left_limit(x) - G.left_limit(x))});
    };
    for (double x : F.abscissae()) probe(x);
    for (double x : G.abscissae()) probe(x);
    return d;
}

namespace detail {

// sup_x [A(x) - B(x + shift)] over right values and left limits at every
// breakpoint of A and of B(. + shift); these bound a piecewise-linear difference.
inline double sup_shifted_gap(const DistributionFunction& A, const DistributionFunction& B,
                              double shift) {
    double s = 0.0;
    for (double x : A.abscissae()) {
        s = std::max({s, A(x) - B(x + shift), A.left_limit(x) - B.left_limit(x + shift)});
    }
    for (double xb : B.abscissae()) {
        const double x = xb - shift;
        s = std::max({s, A(x) - B(xb), A.left_limit(x) - B.left_limit(xb)});
    }
    return s;
}

}  // namespace detail

/// True when F(x - eps) - eps <= G(x) <= F(x + eps) + eps for every x.
inline bool levy_feasible(const DistributionFunction& F, const DistributionFunction& G, double eps) {
    constexpr double slack = 1e-12;
    return detail::sup_shifted_gap(G, F, eps) <= eps + slack &&
           detail::sup_shifted_gap(F, G, eps) <= eps + slack;
}

/// Levy distance, by bisection on eps to absolute accuracy `accuracy`.
inline double levy_distance(const DistributionFunction& F, const DistributionFunction& G,
                            double accuracy = 1e-10) {
    if (levy_feasible(F, G, 0.0)) return 0.0;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > accuracy) {
        const double mid = 0.5 * (lo + hi);
        (levy_feasible(F, G, mid) ? hi : lo) = mid;
    }
    return hi;
}

namespace detail {
inline std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace detail

/// CSV with header `x,F` and one row per point, 17 significant digits.
inline void write_cdf_csv(std::ostream& out, const DistributionFunction& d) {
    out << "x,F\n";
    for (std::size_t k = 0; k < d.abscissae().size(); ++k) {
        out << detail::format17(d.abscissae()[k]) << ',' << detail::format17(d.values()[k]) << '\n';
    }
}

inline void write_cdf_csv(const std::string& path, const DistributionFunction& d) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_cdf_csv(out, d);
}

inline DistributionFunction read_cdf_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || (line != "x,F" && line != "x,F\r")) {
        throw std::runtime_error("CDF CSV: missing `x,F` header");
    }
    std::vector<double> x, F;
    long row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("CDF CSV: malformed row " + std::to_string(row));
        char* end = nullptr;
        const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
        const double xv = std::strtod(a.c_str(), &end);
        if (end == a.c_str()) throw std::runtime_error("CDF CSV: bad x at row " + std::to_string(row));
        const double fv = std::strtod(b.c_str(), &end);
        if (end == b.c_str()) throw std::runtime_error("CDF CSV: bad F at row " + std::to_string(row));
        if (fv < 0.0 || fv > 1.0 || (!F.empty() && (fv < F.back() || xv < x.back()))) {
            throw std::runtime_error("CDF CSV: row " + std::to_string(row) + " breaks monotonicity or [0,1]");
        }
        x.push_back(xv);
        F.push_back(fv);
    }
    if (x.empty()) throw std::runtime_error("CDF CSV: no rows");
    return DistributionFunction::from_table(std::move(x), std::move(F));
}

inline DistributionFunction read_cdf_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_cdf_csv(in);
}

}  // namespace gramfield

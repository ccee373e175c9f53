#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gramfield {

using cplx = std::complex<double>;

namespace detail {
inline cplx unit_phase(double cycles) {
    const double angle = 2.0 * std::numbers::pi * cycles;
    return {std::cos(angle), std::sin(angle)};
}
}  // namespace detail

struct Tap2D {
    long k1 = 0;
    long k2 = 0;
    cplx coeff{};
};

struct Tap1D {
    long j = 0;
    cplx coeff{};
};

/// Finitely supported filter h(k1, k2) on the integer lattice.
///
/// The support is stored sparsely in the order given. An empty filter stands
/// for h = 0. Support points must be distinct.
class FilterSequence2D {
public:
    FilterSequence2D() = default;

    explicit FilterSequence2D(std::vector<Tap2D> taps) : taps_(std::move(taps)) {
        for (const auto& t : taps_) {
            if (!index_.emplace(std::pair{t.k1, t.k2}, t.coeff).second) {
                throw std::invalid_argument("FilterSequence2D: duplicate support point (" +
                                            std::to_string(t.k1) + ", " + std::to_string(t.k2) +
                                            ")");
            }
        }
    }

    const std::vector<Tap2D>& taps() const noexcept { return taps_; }
    bool empty() const noexcept { return taps_.empty(); }
    std::size_t size() const noexcept { return taps_.size(); }

    /// h(k1, k2), zero off the support.
    cplx operator()(long k1, long k2) const {
        const auto it = index_.find({k1, k2});
        return it == index_.end() ? cplx{} : it->second;
    }

    /// h_max = sum |h|.
    double h_max() const noexcept {
        double s = 0.0;
        for (const auto& t : taps_) s += std::abs(t.coeff);
        return s;
    }

    /// sum |h|^2 = C(0, 0).
    double energy() const noexcept {
        double s = 0.0;
        for (const auto& t : taps_) s += std::norm(t.coeff);
        return s;
    }

    /// Largest |k1| or |k2| over the support; 0 for the empty filter.
    long radius() const noexcept {
        long r = 0;
        for (const auto& t : taps_) r = std::max({r, std::labs(t.k1), std::labs(t.k2)});
        return r;
    }

    /// True when every coefficient is real (selects the real-field pathway).
    bool is_real() const noexcept {
        return std::all_of(taps_.begin(), taps_.end(),
                           [](const Tap2D& t) { return t.coeff.imag() == 0.0; });
    }

private:
    std::vector<Tap2D> taps_;
    std::map<std::pair<long, long>, cplx> index_;
};

/// Finitely supported sequence a(j), the generator of a Toeplitz matrix.
class FilterSequence1D {
public:
    FilterSequence1D() = default;

    explicit FilterSequence1D(std::vector<Tap1D> taps) : taps_(std::move(taps)) {
        for (const auto& t : taps_) {
            if (!index_.emplace(t.j, t.coeff).second) {
                throw std::invalid_argument("FilterSequence1D: duplicate support point " +
                                            std::to_string(t.j));
            }
        }
    }

    const std::vector<Tap1D>& taps() const noexcept { return taps_; }
    bool empty() const noexcept { return taps_.empty(); }
    std::size_t size() const noexcept { return taps_.size(); }

    cplx operator()(long j) const {
        const auto it = index_.find(j);
        return it == index_.end() ? cplx{} : it->second;
    }

    double abs_sum() const noexcept {
        double s = 0.0;
        for (const auto& t : taps_) s += std::abs(t.coeff);
        return s;
    }

    long radius() const noexcept {
        long r = 0;
        for (const auto& t : taps_) r = std::max(r, std::labs(t.j));
        return r;
    }

    bool is_real() const noexcept {
        return std::all_of(taps_.begin(), taps_.end(),
                           [](const Tap1D& t) { return t.coeff.imag() == 0.0; });
    }

private:
    std::vector<Tap1D> taps_;
    std::map<long, cplx> index_;
};

/// Phi(t1, t2) = sum h(l1, l2) exp(2 pi i (l1 t1 - l2 t2)), arguments in cycles.
class SpectralSymbol2D {
public:
    explicit SpectralSymbol2D(FilterSequence2D source) : source_(std::move(source)) {}

    const FilterSequence2D& source() const noexcept { return source_; }

    cplx operator()(double t1, double t2) const {
        cplx s{};
        for (const auto& t : source_.taps()) {
            s += t.coeff * detail::unit_phase(static_cast<double>(t.k1) * t1 -
                                              static_cast<double>(t.k2) * t2);
        }
        return s;
    }

    /// Upper bound on sup |Phi|.
    double bound() const noexcept { return source_.h_max(); }

private:
    FilterSequence2D source_;
};

/// psi(t) = sum a(j) exp(2 pi i j t); with a truncation n only |j| <= n is summed.
class SpectralSymbol1D {
public:
    explicit SpectralSymbol1D(FilterSequence1D source, std::optional<long> truncation = {})
        : source_(std::move(source)), truncation_(truncation) {
        if (truncation_ && *truncation_ < 0) {
            throw std::invalid_argument("SpectralSymbol1D: negative truncation");
        }
    }

    const FilterSequence1D& source() const noexcept { return source_; }
    std::optional<long> truncation() const noexcept { return truncation_; }

    cplx operator()(double t) const {
        cplx s{};
        for (const auto& tap : source_.taps()) {
            if (truncation_ && std::labs(tap.j) > *truncation_) continue;
            s += tap.coeff * detail::unit_phase(static_cast<double>(tap.j) * t);
        }
        return s;
    }

    double bound() const noexcept { return source_.abs_sum(); }

private:
    FilterSequence1D source_;
    std::optional<long> truncation_;
};

inline cplx eval_phi(const SpectralSymbol2D& sym, double t1, double t2) { return sym(t1, t2); }

inline cplx eval_psi(const SpectralSymbol1D& sym, double t) { return sym(t); }

/// C(j1, j2) = sum_k h(k1, k2) conj(h(k1 - j1, k2 - j2)).
inline cplx covariance(const FilterSequence2D& h, long j1, long j2) {
    cplx s{};
    for (const auto& t : h.taps()) s += t.coeff * std::conj(h(t.k1 - j1, t.k2 - j2));
    return s;
}

/// Phi_R(u, v) = |Phi(u/2, v/2)|; real filters only.
inline double folded_phi(const SpectralSymbol2D& sym, double u, double v) {
    if (!sym.source().is_real()) {
        throw std::invalid_argument("folded_phi: filter has complex coefficients");
    }
    return std::abs(sym(0.5 * u, 0.5 * v));
}

/// psi_R(u) = |psi(u/2)|; real sequences only.
inline double folded_psi(const SpectralSymbol1D& sym, double u) {
    if (!sym.source().is_real()) {
        throw std::invalid_argument("folded_psi: sequence has complex coefficients");
    }
    return std::abs(sym(0.5 * u));
}

}  // namespace gramfield

#pragma once

// Reference computations used only by tests. Nothing here calls into the
// library code paths it is compared against.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// Stieltjes transform of the Marchenko-Pastur law for Y Y^* with Y N x n,
/// i.i.d. entries of variance 1/n and c = N/n: the root of
/// c z f^2 + (z + c - 1) f + 1 = 0 with Im f > 0 and Im(z f) >= 0.
inline cplx marchenko_pastur_stieltjes(double c, cplx z) {
    const cplx b = z + c - 1.0;
    const cplx disc = std::sqrt(b * b - 4.0 * c * z);
    const cplx r1 = (-b + disc) / (2.0 * c * z);
    const cplx r2 = (-b - disc) / (2.0 * c * z);
    const auto score = [&](cplx f) { return std::min(f.imag(), (z * f).imag()); };
    return score(r1) >= score(r2) ? r1 : r2;
}

/// Closed-form distribution function of the Marchenko-Pastur law with ratio 1,
/// density sqrt(4x - x^2) / (2 pi x) on [0, 4].
inline double marchenko_pastur_cdf_ratio1(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 4.0) return 1.0;
    const double theta = std::asin(std::sqrt(x) / 2.0);
    return (2.0 * theta + std::sin(2.0 * theta)) / std::numbers::pi;
}

/// sum_k w_k / (x_k - z).
inline cplx atomic_stieltjes(const std::vector<std::pair<double, double>>& atoms, cplx z) {
    cplx s{};
    for (const auto& [x, w] : atoms) s += w / (x - z);
    return s;
}

/// Mass a Cauchy kernel of half-width eta puts on [-a, a].
inline double cauchy_mass(double a, double eta) { return 2.0 / std::numbers::pi * std::atan(a / eta); }

/// Right-continuous ECDF by counting.
inline double ecdf(const std::vector<double>& samples, double x) {
    const auto k = std::count_if(samples.begin(), samples.end(), [x](double s) { return s <= x; });
    return static_cast<double>(k) / static_cast<double>(samples.size());
}

/// Levy distance between two finite samples by brute force: scans eps on a
/// fine grid and x over all sample points and the points shifted by +-eps.
inline double levy_brute(const std::vector<double>& a, const std::vector<double>& b, double step = 1e-4) {
    std::vector<double> pts(a);
    pts.insert(pts.end(), b.begin(), b.end());
    for (double eps = 0.0; eps <= 1.0 + step; eps += step) {
        bool ok = true;
        for (double p : pts) {
            for (double x : {p, p - eps, p + eps, p - 1e-12, p - eps - 1e-12, p + eps - 1e-12}) {
                const double G = ecdf(b, x);
                if (ecdf(a, x - eps) - eps > G + 1e-12 || G > ecdf(a, x + eps) + eps + 1e-12) ok = false;
            }
        }
        if (ok) return eps;
    }
    return 1.0;
}

/// Dense DFT of a sequence: X_k = sum_j x_j exp(2 pi i j k / p).
inline std::vector<cplx> dft(const std::vector<cplx>& x) {
    const auto p = static_cast<long>(x.size());
    std::vector<cplx> out(x.size());
    for (long k = 0; k < p; ++k) {
        cplx s{};
        for (long j = 0; j < p; ++j) {
            s += x[static_cast<std::size_t>(j)] *
                 std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((j * k) % p) / static_cast<double>(p));
        }
        out[static_cast<std::size_t>(k)] = s;
    }
    return out;
}

}  // namespace oracle

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "gramfield/matgen.hpp"
#include "gramfield/rng.hpp"
#include "gramfield/symbols.hpp"

namespace gramfield {

enum class TransformFlavor { fourier, real_orthogonal };

struct UnitaryTransform {
    long size = 0;
    TransformFlavor flavor = TransformFlavor::fourier;
    Matrix entries;
};

/// F_p(j1, j2) = p^{-1/2} exp(2 pi i j1 j2 / p).
inline UnitaryTransform fourier_matrix(long p) {
    if (p < 1) throw std::invalid_argument("fourier_matrix: p must be positive");
    Matrix f(p, p);
    const double scale = 1.0 / std::sqrt(static_cast<double>(p));
    for (long j1 = 0; j1 < p; ++j1)
        for (long j2 = 0; j2 < p; ++j2)
            f(j1, j2) = scale * detail::unit_phase(static_cast<double>((j1 * j2) % p) /
                                                   static_cast<double>(p));
    return {p, TransformFlavor::fourier, std::move(f)};
}

/// Real orthogonal counterpart Q_p of the Fourier matrix.
///
/// Row 0 is constant 1/sqrt(p). For 1 <= m <= (p-1)/2 (p odd) or
/// 1 <= m <= p/2 - 1 (p even), row 2m-1 is sqrt(2/p) cos(2 pi m j / p) and row
/// 2m is sqrt(2/p) sin(2 pi m j / p). For even p the last row is (-1)^j / sqrt(p).
inline UnitaryTransform real_orthogonal_matrix(long p) {
    if (p < 1) throw std::invalid_argument("real_orthogonal_matrix: p must be positive");
    Matrix q = Matrix::Zero(p, p);
    const double pd = static_cast<double>(p);
    const double edge = 1.0 / std::sqrt(pd);
    const double bulk = std::sqrt(2.0 / pd);
    for (long j = 0; j < p; ++j) q(0, j) = edge;
    const long top = (p % 2 == 0) ? p / 2 - 1 : (p - 1) / 2;
    for (long m = 1; m <= top; ++m) {
        for (long j = 0; j < p; ++j) {
            const cplx e = detail::unit_phase(static_cast<double>((m * j) % p) / pd);
            q(2 * m - 1, j) = bulk * e.real();
            q(2 * m, j) = bulk * e.imag();
        }
    }
    if (p % 2 == 0 && p > 1) {
        for (long j = 0; j < p; ++j) q(p - 1, j) = (j % 2 == 0 ? edge : -edge);
    }
    return {p, TransformFlavor::real_orthogonal, std::move(q)};
}

/// T_left * M * T_right^* (the adjoint is the transpose for the real flavor).
inline FieldMatrix congruence(const UnitaryTransform& left, const FieldMatrix& m,
                              const UnitaryTransform& right) {
    if (left.size != m.rows() || right.size != m.cols()) {
        throw std::invalid_argument("congruence: dimension mismatch");
    }
    Matrix out = left.entries * m.entries() * right.entries.adjoint();
    return FieldMatrix(std::move(out), FieldKind::generic, m.seed());
}

enum class ProfileFlavor { complex_fourier, real_folded };

/// Frequency index carried by row l of Q_p: floor((l + 1) / 2).
inline long folded_frequency(long l) { return (l + 1) / 2; }

/// N x n grid of n * Var(entry) predicted after congruence:
///   complex_fourier: |Phi(l1/N, l2/n)|^2
///   real_folded:     |Phi(floor((l1+1)/2)/N, floor((l2+1)/2)/n)|^2
inline Eigen::MatrixXd variance_profile_grid(const SpectralSymbol2D& sym, long N, long n,
                                             ProfileFlavor flavor = ProfileFlavor::complex_fourier) {
    if (N < 1 || n < 1) throw std::invalid_argument("variance_profile_grid: dimensions must be positive");
    Eigen::MatrixXd g(N, n);
    for (long l1 = 0; l1 < N; ++l1) {
        for (long l2 = 0; l2 < n; ++l2) {
            const long a = flavor == ProfileFlavor::real_folded ? folded_frequency(l1) : l1;
            const long b = flavor == ProfileFlavor::real_folded ? folded_frequency(l2) : l2;
            g(l1, l2) = std::norm(sym(static_cast<double>(a) / static_cast<double>(N),
                                      static_cast<double>(b) / static_cast<double>(n)));
        }
    }
    return g;
}

/// Exact n * Var(W_{l1 l2}) for W = Q_N Z~ Q_n^T with a real filter:
/// (|Phi(a/N, b/n)|^2 + |Phi(a/N, -b/n)|^2) / 2 with (a, b) the folded frequencies.
/// Equals the real_folded grid only when |Phi(a, b)| = |Phi(a, -b)|.
inline Eigen::MatrixXd real_congruence_variance(const SpectralSymbol2D& sym, long N, long n) {
    Eigen::MatrixXd g(N, n);
    for (long l1 = 0; l1 < N; ++l1) {
        for (long l2 = 0; l2 < n; ++l2) {
            const double u = static_cast<double>(folded_frequency(l1)) / static_cast<double>(N);
            const double v = static_cast<double>(folded_frequency(l2)) / static_cast<double>(n);
            g(l1, l2) = 0.5 * (std::norm(sym(u, v)) + std::norm(sym(u, -v)));
        }
    }
    return g;
}

struct WhitenessReport {
    long samples = 0;
    double threshold = 0.0;           // 4 / sqrt(samples)
    long pairs_tested = 0;
    double max_correlation = 0.0;     // over sampled distinct entry pairs
    double fraction_below = 0.0;      // of sampled pairs with correlation < threshold
    long mirror_pairs = 0;
    double mirror_max_correlation = 0.0;  // over (l1, l2) vs (-l1 mod N, -l2 mod n)
    double mirror_fraction_below = 0.0;

    static constexpr double required_fraction = 0.95;

    bool pairs_pass() const { return fraction_below >= required_fraction; }
    bool mirror_flagged() const { return mirror_pairs > 0 && mirror_fraction_below < required_fraction; }
    bool passes() const { return pairs_pass() && !mirror_flagged(); }
};

namespace detail {

// max(|sample correlation|, |sample pseudo-correlation|) between entries x and y
// across the population; the pseudo term catches x ~ conj(y).
inline double pair_correlation(std::span<const FieldMatrix> pop, const Eigen::VectorXcd& mean,
                               long rows, long x, long y) {
    cplx cov{}, pcov{};
    double vx = 0.0, vy = 0.0;
    for (const auto& m : pop) {
        const cplx a = m.entries()(x % rows, x / rows) - mean(x);
        const cplx b = m.entries()(y % rows, y / rows) - mean(y);
        cov += a * std::conj(b);
        pcov += a * b;
        vx += std::norm(a);
        vy += std::norm(b);
    }
    const double denom = std::sqrt(vx * vy);
    if (denom == 0.0) return 0.0;
    return std::max(std::abs(cov), std::abs(pcov)) / denom;
}

}  // namespace detail

/// Empirical independence check over a population of same-shape samples.
///
/// `pairs` distinct entry pairs are drawn from the (seed, generic) stream; every
/// mirror pair (l, -l) is checked as well.
inline WhitenessReport whiteness_check(std::span<const FieldMatrix> population, long pairs = 2000,
                                       std::uint64_t seed = 0) {
    if (population.size() < 2) throw std::invalid_argument("whiteness_check: need at least 2 samples");
    const long rows = population.front().rows();
    const long cols = population.front().cols();
    for (const auto& m : population) {
        if (m.rows() != rows || m.cols() != cols) throw std::invalid_argument("whiteness_check: shape mismatch");
    }
    const long total = rows * cols;
    Eigen::VectorXcd mean = Eigen::VectorXcd::Zero(total);
    for (const auto& m : population) mean += m.entries().reshaped();
    mean /= static_cast<double>(population.size());

    WhitenessReport r;
    r.samples = static_cast<long>(population.size());
    r.threshold = 4.0 / std::sqrt(static_cast<double>(r.samples));

    if (total >= 2) {
        SplitMixStream stream(seed, static_cast<std::uint64_t>(FieldKind::generic));
        long below = 0;
        for (long k = 0; k < pairs; ++k) {
            const long x = static_cast<long>(stream.next_u64() % static_cast<std::uint64_t>(total));
            long y = static_cast<long>(stream.next_u64() % static_cast<std::uint64_t>(total - 1));
            if (y >= x) ++y;
            const double c = detail::pair_correlation(population, mean, rows, x, y);
            r.max_correlation = std::max(r.max_correlation, c);
            if (c < r.threshold) ++below;
        }
        r.pairs_tested = pairs;
        r.fraction_below = pairs > 0 ? static_cast<double>(below) / static_cast<double>(pairs) : 1.0;
    } else {
        r.fraction_below = 1.0;
    }

    long below = 0;
    for (long l2 = 0; l2 < cols; ++l2) {
        for (long l1 = 0; l1 < rows; ++l1) {
            const long x = l1 + rows * l2;
            const long y = (rows - l1) % rows + rows * ((cols - l2) % cols);
            if (y <= x) continue;
            const double c = detail::pair_correlation(population, mean, rows, x, y);
            r.mirror_max_correlation = std::max(r.mirror_max_correlation, c);
            if (c < r.threshold) ++below;
            ++r.mirror_pairs;
        }
    }
    r.mirror_fraction_below =
        r.mirror_pairs > 0 ? static_cast<double>(below) / static_cast<double>(r.mirror_pairs) : 1.0;
    return r;
}

}  // namespace gramfield

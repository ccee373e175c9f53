#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gramfield/rng.hpp"
#include "gramfield/symbols.hpp"

namespace gramfield {

using Matrix = Eigen::MatrixXcd;

enum class FieldKind : std::uint32_t {
    noise_U = 0,
    raw_Z = 1,
    periodized_Z = 2,
    toeplitz_A = 3,
    circulant_A = 4,
    pseudo_diagonal_Lambda = 5,
    generic = 6,
};

inline std::string_view to_string(FieldKind k) {
    switch (k) {
        case FieldKind::noise_U: return "noise_U";
        case FieldKind::raw_Z: return "raw_Z";
        case FieldKind::periodized_Z: return "periodized_Z";
        case FieldKind::toeplitz_A: return "toeplitz_A";
        case FieldKind::circulant_A: return "circulant_A";
        case FieldKind::pseudo_diagonal_Lambda: return "pseudo_diagonal_Lambda";
        case FieldKind::generic: return "generic";
    }
    return "generic";
}

inline FieldKind field_kind_from_string(std::string_view s) {
    for (std::uint32_t k = 0; k <= static_cast<std::uint32_t>(FieldKind::generic); ++k) {
        if (to_string(static_cast<FieldKind>(k)) == s) return static_cast<FieldKind>(k);
    }
    throw std::invalid_argument("unknown matrix kind: " + std::string(s));
}

/// A dense complex matrix tagged with how it was built.
///
/// `row_origin`/`col_origin` give the model index of entry (0, 0). They are
/// zero except for noise windows, which extend `margin` entries beyond the
/// N x n window on every side.
class FieldMatrix {
public:
    FieldMatrix(Matrix entries, FieldKind kind, std::uint64_t seed = 0, long row_origin = 0,
                long col_origin = 0)
        : entries_(std::move(entries)),
          kind_(kind),
          seed_(seed),
          row_origin_(row_origin),
          col_origin_(col_origin) {
        if (entries_.rows() < 1 || entries_.cols() < 1) {
            throw std::invalid_argument("FieldMatrix: dimensions must be positive");
        }
        check_structure();
    }

    const Matrix& entries() const noexcept { return entries_; }
    FieldKind kind() const noexcept { return kind_; }
    std::uint64_t seed() const noexcept { return seed_; }
    long rows() const noexcept { return static_cast<long>(entries_.rows()); }
    long cols() const noexcept { return static_cast<long>(entries_.cols()); }
    long row_origin() const noexcept { return row_origin_; }
    long col_origin() const noexcept { return col_origin_; }

    /// Entry at model indices (i, j).
    cplx at(long i, long j) const { return entries_(i - row_origin_, j - col_origin_); }

    bool covers(long row_lo, long row_hi, long col_lo, long col_hi) const noexcept {
        return row_lo >= row_origin_ && row_hi < row_origin_ + rows() && col_lo >= col_origin_ &&
               col_hi < col_origin_ + cols();
    }

    bool is_real() const noexcept { return (entries_.imag().array() == 0.0).all(); }

private:
    void check_structure() const {
        if (kind_ == FieldKind::pseudo_diagonal_Lambda) {
            for (Eigen::Index i = 0; i < entries_.rows(); ++i)
                for (Eigen::Index j = 0; j < entries_.cols(); ++j)
                    if (i != j && entries_(i, j) != cplx{})
                        throw std::invalid_argument("FieldMatrix: pseudo-diagonal with off-diagonal entry");
        }
        if (kind_ == FieldKind::toeplitz_A) {
            for (Eigen::Index i = 1; i < entries_.rows(); ++i)
                for (Eigen::Index j = 1; j < entries_.cols(); ++j)
                    if (entries_(i, j) != entries_(i - 1, j - 1))
                        throw std::invalid_argument("FieldMatrix: Toeplitz entry not constant on diagonal");
        }
    }

    Matrix entries_;
    FieldKind kind_;
    std::uint64_t seed_;
    long row_origin_;
    long col_origin_;
};

enum class NoiseDistribution { complex_standard, real_standard };

/// complex_standard: independent real and imaginary parts with variance 1/2
/// each (E U = 0, E U^2 = 0, E |U|^2 = 1). real_standard: N(0, 1).
struct NoiseSpec {
    NoiseDistribution distribution = NoiseDistribution::complex_standard;
    std::uint64_t seed = 0;
};

namespace detail {

inline Matrix fill_noise(long rows, long cols, const NoiseSpec& spec, FieldKind stream_tag) {
    SplitMixStream stream(spec.seed, static_cast<std::uint64_t>(stream_tag));
    Matrix u(rows, cols);
    if (spec.distribution == NoiseDistribution::complex_standard) {
        const double s = std::sqrt(0.5);
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j) u(i, j) = s * stream.next_normal_pair();
        return u;
    }
    cplx pair{};
    bool have_second = false;
    for (long i = 0; i < rows; ++i) {
        for (long j = 0; j < cols; ++j) {
            if (have_second) {
                u(i, j) = pair.imag();
            } else {
                pair = stream.next_normal_pair();
                u(i, j) = pair.real();
            }
            have_second = !have_second;
        }
    }
    return u;
}

}  // namespace detail

/// I.i.d. noise over the window [-margin, N + margin) x [-margin, n + margin).
///
/// Entries are filled row-major from the stream keyed by (seed, noise_U). A
/// complex entry consumes one Box-Muller pair; real entries use both halves
/// of each pair in turn.
inline FieldMatrix sample_noise(long N, long n, const NoiseSpec& spec, long margin = 0) {
    if (N < 1 || n < 1) throw std::invalid_argument("sample_noise: dimensions must be positive");
    if (margin < 0) throw std::invalid_argument("sample_noise: negative margin");
    return FieldMatrix(detail::fill_noise(N + 2 * margin, n + 2 * margin, spec, FieldKind::noise_U),
                       FieldKind::noise_U, spec.seed, -margin, -margin);
}

/// Z_{j1 j2} = n^{-1/2} sum_k h(k1, k2) U(j1 - k1, j2 - k2) on the N x n window.
inline FieldMatrix build_Z(const FilterSequence2D& h, const FieldMatrix& noise, long N, long n) {
    if (N < 1 || n < 1) throw std::invalid_argument("build_Z: dimensions must be positive");
    Matrix z = Matrix::Zero(N, n);
    for (const auto& t : h.taps()) {
        if (!noise.covers(-t.k1, N - 1 - t.k1, -t.k2, n - 1 - t.k2)) {
            throw std::invalid_argument("build_Z: noise margin too small for filter support");
        }
        z += t.coeff * noise.entries().block(-t.k1 - noise.row_origin(),
                                             -t.k2 - noise.col_origin(), N, n);
    }
    z /= std::sqrt(static_cast<double>(n));
    return FieldMatrix(std::move(z), FieldKind::raw_Z, noise.seed());
}

/// Periodized field: indices reduced mod N and mod n into the in-window block.
inline FieldMatrix build_Z_tilde(const FilterSequence2D& h, const FieldMatrix& noise, long N,
                                 long n) {
    if (N < 1 || n < 1) throw std::invalid_argument("build_Z_tilde: dimensions must be positive");
    if (!noise.covers(0, N - 1, 0, n - 1)) {
        throw std::invalid_argument("build_Z_tilde: noise block smaller than N x n");
    }
    const auto mod = [](long a, long m) { return ((a % m) + m) % m; };
    Matrix z = Matrix::Zero(N, n);
    for (const auto& t : h.taps()) {
        for (long j1 = 0; j1 < N; ++j1) {
            const long r = mod(j1 - t.k1, N);
            for (long j2 = 0; j2 < n; ++j2) z(j1, j2) += t.coeff * noise.at(r, mod(j2 - t.k2, n));
        }
    }
    z /= std::sqrt(static_cast<double>(n));
    return FieldMatrix(std::move(z), FieldKind::periodized_Z, noise.seed());
}

/// A = (a(j1 - j2)), n x n.
inline FieldMatrix build_toeplitz(const FilterSequence1D& a, long n) {
    if (n < 1) throw std::invalid_argument("build_toeplitz: n must be positive");
    Matrix m = Matrix::Zero(n, n);
    for (const auto& t : a.taps()) {
        if (std::labs(t.j) >= n) continue;
        for (long j2 = std::max(0L, -t.j); j2 < std::min(n, n - t.j); ++j2) m(j2 + t.j, j2) = t.coeff;
    }
    return FieldMatrix(std::move(m), FieldKind::toeplitz_A);
}

/// Generator of the circulant approximant: a~(0) = a(0) + a(n) + a(-n),
/// a~(d) = a(d) + a(d - n) for 0 < d < n, a~(d) = a(d) + a(d + n) for -n < d < 0.
inline cplx circulant_generator(const FilterSequence1D& a, long n, long d) {
    if (d == 0) return a(0) + a(n) + a(-n);
    if (d > 0) return a(d) + a(d - n);
    return a(d) + a(d + n);
}

/// Circulant approximant of the Toeplitz matrix, built from the closed form.
inline FieldMatrix build_circulant(const FilterSequence1D& a, long n) {
    if (n < 1) throw std::invalid_argument("build_circulant: n must be positive");
    std::vector<cplx> gen(static_cast<std::size_t>(2 * n - 1));
    for (long d = -(n - 1); d <= n - 1; ++d) gen[static_cast<std::size_t>(d + n - 1)] = circulant_generator(a, n, d);
    Matrix m(n, n);
    for (long j1 = 0; j1 < n; ++j1)
        for (long j2 = 0; j2 < n; ++j2) m(j1, j2) = gen[static_cast<std::size_t>(j1 - j2 + n - 1)];
    return FieldMatrix(std::move(m), FieldKind::circulant_A);
}

/// Same matrix from its spectral definition,
/// a~_{j1 j2} = (1/n) sum_k psi_n(k/n) exp(-2 pi i k (j1 - j2) / n).
inline FieldMatrix circulant_from_symbol(const FilterSequence1D& a, long n) {
    if (n < 1) throw std::invalid_argument("circulant_from_symbol: n must be positive");
    const SpectralSymbol1D psi_n(a, n);
    std::vector<cplx> psi(static_cast<std::size_t>(n));
    for (long k = 0; k < n; ++k) psi[static_cast<std::size_t>(k)] = psi_n(static_cast<double>(k) / static_cast<double>(n));
    Matrix m(n, n);
    for (long j1 = 0; j1 < n; ++j1) {
        for (long j2 = 0; j2 < n; ++j2) {
            cplx s{};
            for (long k = 0; k < n; ++k) {
                const long phase = ((k * (j1 - j2)) % n + n) % n;
                s += psi[static_cast<std::size_t>(k)] *
                     detail::unit_phase(-static_cast<double>(phase) / static_cast<double>(n));
            }
            m(j1, j2) = s / static_cast<double>(n);
        }
    }
    return FieldMatrix(std::move(m), FieldKind::circulant_A);
}

/// N x n matrix with `diag` on the main diagonal and zeros elsewhere.
inline FieldMatrix build_lambda(std::span<const cplx> diag, long N, long n) {
    if (N < 1 || n < 1) throw std::invalid_argument("build_lambda: dimensions must be positive");
    if (static_cast<long>(diag.size()) != std::min(N, n)) {
        throw std::invalid_argument("build_lambda: diagonal length must equal min(N, n)");
    }
    Matrix m = Matrix::Zero(N, n);
    for (std::size_t i = 0; i < diag.size(); ++i) m(static_cast<long>(i), static_cast<long>(i)) = diag[i];
    return FieldMatrix(std::move(m), FieldKind::pseudo_diagonal_Lambda);
}

/// [psi_n(0), psi_n(1/n), ..., psi_n((n-1)/n)], the Fourier diagonal of the circulant.
inline std::vector<cplx> circulant_eigenvalues(const FilterSequence1D& a, long n) {
    const SpectralSymbol1D psi_n(a, n);
    std::vector<cplx> out(static_cast<std::size_t>(n));
    for (long k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = psi_n(static_cast<double>(k) / static_cast<double>(n));
    return out;
}

/// Gaussian matrix with i.i.d. entries of the given variance, drawn from the
/// (seed, generic) stream so it never aliases a noise window with the same seed.
inline FieldMatrix sample_gaussian(long N, long n, const NoiseSpec& spec, double variance = 1.0) {
    if (N < 1 || n < 1) throw std::invalid_argument("sample_gaussian: dimensions must be positive");
    Matrix m = detail::fill_noise(N, n, spec, FieldKind::generic) * std::sqrt(variance);
    return FieldMatrix(std::move(m), FieldKind::generic, spec.seed);
}

/// Sum of two same-shape matrices, tagged `generic`.
inline FieldMatrix add(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("add: shape mismatch");
    return FieldMatrix(a.entries() + b.entries(), FieldKind::generic, a.seed());
}

}  // namespace gramfield

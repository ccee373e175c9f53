#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "gramfield/distribution.hpp"
#include "gramfield/matgen.hpp"
#include "gramfield/parallel.hpp"

namespace gramfield {

/// Sorted nonnegative eigenvalues of a Gram matrix.
struct EmpiricalSpectrum {
    std::vector<double> eigenvalues;
    long dim = 0;

    DistributionFunction cdf() const { return DistributionFunction::from_samples(eigenvalues); }
};

enum class GramSide { left, right };  // M M^* or M^* M

inline EmpiricalSpectrum gram_spectrum(const Matrix& m, GramSide side = GramSide::left) {
    const Matrix gram = side == GramSide::left ? Matrix(m * m.adjoint()) : Matrix(m.adjoint() * m);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("gram_spectrum: eigensolver did not converge");
    const Eigen::VectorXd& ev = solver.eigenvalues();
    const double scale = std::max(ev.cwiseAbs().maxCoeff(), 0.0);
    EmpiricalSpectrum s;
    s.dim = static_cast<long>(ev.size());
    s.eigenvalues.resize(static_cast<std::size_t>(ev.size()));
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -1e-9 * scale) throw std::runtime_error("gram_spectrum: Gram matrix has a negative eigenvalue");
        s.eigenvalues[static_cast<std::size_t>(i)] = std::max(ev(i), 0.0);
    }
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
    return s;
}

inline EmpiricalSpectrum gram_spectrum(const FieldMatrix& m, GramSide side = GramSide::left) {
    return gram_spectrum(m.entries(), side);
}

/// Concatenation of several spectra (each contributes its own eigenvalues).
inline EmpiricalSpectrum pool(std::span<const EmpiricalSpectrum> spectra) {
    EmpiricalSpectrum out;
    for (const auto& s : spectra) {
        out.eigenvalues.insert(out.eigenvalues.end(), s.eigenvalues.begin(), s.eigenvalues.end());
        out.dim += s.dim;
    }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    return out;
}

/// f(z) = (1/N) sum_i 1 / (lambda_i - z).
inline cplx empirical_stieltjes(const EmpiricalSpectrum& s, cplx z) {
    if (!(z.imag() > 0.0)) throw std::invalid_argument("empirical_stieltjes: Im z must be positive");
    if (s.eigenvalues.empty()) throw std::invalid_argument("empirical_stieltjes: empty spectrum");
    cplx acc{};
    for (double l : s.eigenvalues) acc += 1.0 / (l - z);
    return acc / static_cast<double>(s.eigenvalues.size());
}

struct BaiBound {
    double lhs = 0.0;  // L^4(F^{AA*}, F^{BB*})
    double rhs = 0.0;  // (2/N^2) Tr(A-B)(A-B)^* Tr(AA^* + BB^*)
    bool holds() const { return lhs <= rhs; }
};

/// Both sides of Bai's trace inequality for same-shape N x n matrices.
inline BaiBound bai_bound(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("bai_bound: shape mismatch");
    const double N = static_cast<double>(a.rows());
    const double L = levy_distance(gram_spectrum(a).cdf(), gram_spectrum(b).cdf());
    BaiBound r;
    r.lhs = std::pow(L, 4);
    r.rhs = 2.0 / (N * N) * (a - b).squaredNorm() * (a.squaredNorm() + b.squaredNorm());
    return r;
}

inline BaiBound bai_bound(const FieldMatrix& a, const FieldMatrix& b) {
    return bai_bound(a.entries(), b.entries());
}

struct TraceStats {
    double alpha = 0.0;       // (1/n) Tr (Z - Z~)(Z - Z~)^*
    double beta = 0.0;        // (1/n) Tr (Z + B)(Z + B)^*
    double beta_tilde = 0.0;  // (1/n) Tr (Z~ + B)(Z~ + B)^*
};

inline TraceStats trace_stats(const Matrix& z, const Matrix& z_tilde, const Matrix& b) {
    if (z.rows() != z_tilde.rows() || z.cols() != z_tilde.cols() || z.rows() != b.rows() ||
        z.cols() != b.cols()) {
        throw std::invalid_argument("trace_stats: shape mismatch");
    }
    const double n = static_cast<double>(z.cols());
    return {(z - z_tilde).squaredNorm() / n, (z + b).squaredNorm() / n, (z_tilde + b).squaredNorm() / n};
}

inline TraceStats trace_stats(const FieldMatrix& z, const FieldMatrix& z_tilde, const FieldMatrix& b) {
    return trace_stats(z.entries(), z_tilde.entries(), b.entries());
}

using StieltjesFunction = std::function<cplx(cplx)>;

/// grid lo, lo + step, ... up to and including hi (within half a step).
inline std::vector<double> uniform_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi > lo)) throw std::invalid_argument("uniform_grid: need hi > lo and step > 0");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
    std::vector<double> g(count);
    for (std::size_t k = 0; k < count; ++k) g[k] = lo + static_cast<double>(k) * step;
    return g;
}

/// Tabulated CDF from the inversion formula: F(x_k) = (1/pi) * trapezoid
/// integral of Im f(xi + i eta) over [x_0, x_k]. Biased by O(eta): each atom
/// is smeared into a Cauchy density of half-width eta. f is evaluated at the
/// grid points on up to `threads` workers and must be safe to call concurrently.
inline DistributionFunction invert_stieltjes_to_cdf(const StieltjesFunction& f,
                                                     std::span<const double> grid, double eta,
                                                     unsigned threads = 1) {
    if (!(eta > 0.0)) throw std::invalid_argument("invert_stieltjes_to_cdf: eta must be positive");
    if (grid.size() < 2) throw std::invalid_argument("invert_stieltjes_to_cdf: need at least two grid points");
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) throw std::invalid_argument("invert_stieltjes_to_cdf: grid not increasing");
    }
    std::vector<double> density(grid.size());
    parallel_for(grid.size(), threads,
                 [&](std::size_t k) { density[k] = f(cplx{grid[k], eta}).imag() / std::numbers::pi; });
    std::vector<double> F(grid.size(), 0.0);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        F[k] = F[k - 1] + 0.5 * (density[k] + density[k - 1]) * (grid[k] - grid[k - 1]);
    }
    return DistributionFunction::from_table(std::vector<double>(grid.begin(), grid.end()), std::move(F));
}

}  // namespace gramfield

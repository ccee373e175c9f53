#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "gramfield/matgen.hpp"
#include "gramfield/spectra.hpp"

namespace gramfield {

template <class F>
concept Profile2D = std::is_invocable_r_v<double, const F&, double, double>;

template <class F>
concept Profile1D = std::is_invocable_r_v<double, const F&, double>;

/// Midpoint rule on [lo, hi] with `size` cells: nodes lo + (hi - lo)(k + 1/2)/size,
/// each carrying weight (hi - lo)/size.
struct QuadratureGrid {
    std::vector<double> nodes;
    double weight = 0.0;

    static QuadratureGrid midpoint(long size, double lo = 0.0, double hi = 1.0) {
        if (size < 0) throw std::invalid_argument("QuadratureGrid: negative size");
        QuadratureGrid g;
        g.nodes.resize(static_cast<std::size_t>(size));
        if (size == 0) return g;
        const double h = (hi - lo) / static_cast<double>(size);
        for (long k = 0; k < size; ++k) g.nodes[static_cast<std::size_t>(k)] = lo + h * (static_cast<double>(k) + 0.5);
        g.weight = h;
        return g;
    }

    long size() const noexcept { return static_cast<long>(nodes.size()); }
};

struct SolverConfig {
    long grid_size = 64;            // midpoint nodes on [0, 1]
    double tolerance = 1e-10;       // sup-norm of update - current
    long max_iterations = 10000;
    std::optional<double> damping;  // default: 1 for Im z >= 1, else 0.5
    long remainder_grid_size = 64;  // nodes on [c, 1] for the non-centered pi-tilde
    bool newton = true;             // polish with Newton steps after `newton_after` iterations
    long newton_after = 20;

    double damping_for(cplx z) const { return damping.value_or(z.imag() >= 1.0 ? 1.0 : 0.5); }

    void validate() const {
        if (!(tolerance > 0.0)) throw std::invalid_argument("SolverConfig: tolerance must be positive");
        if (grid_size < 8) throw std::invalid_argument("SolverConfig: grid_size must be at least 8");
        if (max_iterations < 1) throw std::invalid_argument("SolverConfig: max_iterations must be positive");
        if (damping && !(*damping > 0.0 && *damping <= 1.0)) {
            throw std::invalid_argument("SolverConfig: damping must lie in (0, 1]");
        }
        if (remainder_grid_size < 1) throw std::invalid_argument("SolverConfig: remainder_grid_size must be positive");
    }
};

/// Discretized Stieltjes kernel: complex weights on points (position, lambda).
/// Grid-only kernels have lambda = 0 everywhere.
struct StieltjesKernel {
    cplx z{};
    std::vector<double> positions;
    std::vector<double> lambdas;
    Eigen::VectorXcd weights;
    double residual = 0.0;
    long iterations = 0;

    cplx total() const { return weights.sum(); }

    template <class G>
    cplx integrate(const G& g) const {
        cplx s{};
        for (Eigen::Index k = 0; k < weights.size(); ++k) {
            const auto i = static_cast<std::size_t>(k);
            if constexpr (std::is_invocable_v<const G&, double, double>) {
                s += g(positions[i], lambdas[i]) * weights(k);
            } else {
                s += g(positions[i]) * weights(k);
            }
        }
        return s;
    }
};

struct KernelPair {
    StieltjesKernel pi;
    StieltjesKernel pi_tilde;

    cplx f() const { return pi.total(); }
    cplx f_tilde() const { return pi_tilde.total(); }
};

/// Probability measure H(du, dlambda) with finitely many atoms.
class AtomicMeasureH {
public:
    struct Atom {
        double u = 0.0;
        double lambda = 0.0;
        double weight = 0.0;
    };

    explicit AtomicMeasureH(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
        if (atoms_.empty()) throw std::invalid_argument("AtomicMeasureH: no atoms");
        double total = 0.0;
        for (const auto& a : atoms_) {
            if (!(a.u >= 0.0 && a.u <= 1.0)) throw std::invalid_argument("AtomicMeasureH: u outside [0, 1]");
            if (!(a.lambda >= 0.0)) throw std::invalid_argument("AtomicMeasureH: negative lambda");
            if (!(a.weight > 0.0)) throw std::invalid_argument("AtomicMeasureH: nonpositive weight");
            total += a.weight;
        }
        if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("AtomicMeasureH: weights must sum to 1");
    }

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    long size() const noexcept { return static_cast<long>(atoms_.size()); }

private:
    std::vector<Atom> atoms_;
};

/// Raised when the iteration budget runs out; carries the last iterate's f(z).
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(cplx z, double residual, long iterations, cplx last_f)
        : std::runtime_error("fixed point did not converge at z = (" + std::to_string(z.real()) + ", " +
                             std::to_string(z.imag()) + "): residual " + std::to_string(residual) +
                             " after " + std::to_string(iterations) + " iterations"),
          residual_(residual),
          iterations_(iterations),
          last_f_(last_f) {}

    double residual() const noexcept { return residual_; }
    long iterations() const noexcept { return iterations_; }
    cplx last_f() const noexcept { return last_f_; }

private:
    double residual_;
    long iterations_;
    cplx last_f_;
};

namespace detail {

inline double sup_norm(const Eigen::VectorXcd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Every weight stays in the half-plane of z and keeps Im(z w) on the same side;
// both hold node by node for the true fixed point.
inline bool admissible(const Eigen::VectorXcd& w, cplx z) {
    const double side = z.imag() > 0.0 ? 1.0 : -1.0;
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        const double tol = 1e-13 * std::abs(w(k));
        if (side * w(k).imag() < -tol || side * (z * w(k)).imag() < -tol) return false;
    }
    return true;
}

struct EngineResult {
    Eigen::VectorXcd w;
    double residual = 0.0;
    long iterations = 0;
};

// Solves w = G(w) for a system exposing initial(), map(w) and jacobian(w).
//
// Damped iteration w <- (1 - d) w + d G(w). With cfg.newton set, after
// cfg.newton_after steps the iteration switches to Newton steps on
// w - G(w) = 0 with step halving, falling back to a damped step whenever Newton
// fails to reduce the residual. A Newton-polished point is mapped once more
// through G before being returned, so the result is an image of the map and
// the stored residual is re-evaluated there. If Newton lands outside the
// admissible half-plane the solve restarts with plain damped iteration.
template <class System>
EngineResult run_fixed_point(const System& sys, cplx z, const SolverConfig& cfg) {
    const double damping = cfg.damping_for(z);
    const auto attempt = [&](bool use_newton) -> std::optional<EngineResult> {
        Eigen::VectorXcd w = sys.initial();
        Eigen::VectorXcd g = sys.map(w);
        double r = sup_norm(g - w);
        bool newton_touched = false;
        for (long it = 1; it <= cfg.max_iterations; ++it) {
            if (r <= cfg.tolerance) {
                if (newton_touched) {
                    w = g;
                    g = sys.map(w);
                    r = sup_norm(g - w);
                }
                if (!admissible(w, z)) return std::nullopt;
                return EngineResult{std::move(w), r, it};
            }
            bool stepped = false;
            if (use_newton && it > cfg.newton_after) {
                const Eigen::Index d = w.size();
                const Eigen::MatrixXcd J = sys.jacobian(w);
                const Eigen::VectorXcd delta =
                    (Eigen::MatrixXcd::Identity(d, d) - J).partialPivLu().solve(g - w);
                if (delta.allFinite()) {
                    double t = 1.0;
                    for (int halving = 0; halving < 8; ++halving, t *= 0.5) {
                        Eigen::VectorXcd trial = w + t * delta;
                        Eigen::VectorXcd gt = sys.map(trial);
                        const double rt = sup_norm(gt - trial);
                        if (std::isfinite(rt) && rt < r) {
                            w = std::move(trial);
                            g = std::move(gt);
                            r = rt;
                            stepped = true;
                            newton_touched = true;
                            break;
                        }
                    }
                }
            }
            if (!stepped) {
                w = (1.0 - damping) * w + damping * g;
                g = sys.map(w);
                r = sup_norm(g - w);
            }
        }
        throw ConvergenceError(z, r, cfg.max_iterations, w.sum());
    };
    if (cfg.newton) {
        if (auto res = attempt(true)) return *res;
    }
    if (auto res = attempt(false)) return *res;
    throw std::runtime_error("fixed point left the admissible half-plane");
}

inline void check_upper(cplx z, const char* who) {
    if (!(z.imag() > 0.0)) throw std::invalid_argument(std::string(who) + ": Im z must be positive");
}

inline void check_ratio(double c, const char* who) {
    if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument(std::string(who) + ": c must lie in (0, 1]");
}

template <Profile2D P>
Eigen::MatrixXd tabulate(const P& profile, std::span<const double> rows, std::span<const double> cols) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = profile(rows[i], cols[j]);
    return m;
}

// w_u = q / (-z + q sum_t P(u, t) / (1 + c v_t)),  v_t = sum_x P(x, t) w_x.
struct CenteredSystem {
    Eigen::MatrixXd P;
    double c;
    cplx z;
    double q;

    Eigen::VectorXcd initial() const { return Eigen::VectorXcd::Constant(P.rows(), -q / z); }

    Eigen::VectorXcd map(const Eigen::VectorXcd& w) const {
        const Eigen::VectorXcd s = (1.0 + c * (P.transpose() * w).array()).inverse().matrix();
        const Eigen::VectorXcd den = (-z + q * (P * s).array()).matrix();
        return (q / den.array()).matrix();
    }

    Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& w) const {
        const Eigen::VectorXcd s = (1.0 + c * (P.transpose() * w).array()).inverse().matrix();
        const Eigen::VectorXcd den = (-z + q * (P * s).array()).matrix();
        const Eigen::VectorXcd left = (q * q * c / den.array().square()).matrix();
        const Eigen::MatrixXcd mid = P.cast<cplx>() * s.array().square().matrix().asDiagonal();
        return left.asDiagonal() * (mid * P.transpose().cast<cplx>());
    }
};

// Unknowns [w; w~] on the grid; a = P w~, b = P^T w,
// w_u  = q / (-z (1 + a_u) + s_u / (1 + b_u)),
// w~_u = q / (-z (1 + b_u) + s_u / (1 + a_u)).
struct SquareSystem {
    Eigen::MatrixXd P;
    Eigen::VectorXd s;
    cplx z;
    double q;

    Eigen::Index m() const { return P.rows(); }

    Eigen::VectorXcd initial() const { return Eigen::VectorXcd::Constant(2 * m(), -q / z); }

    Eigen::VectorXcd map(const Eigen::VectorXcd& x) const {
        const auto w = x.head(m());
        const auto wt = x.tail(m());
        const Eigen::ArrayXcd a = P * wt;
        const Eigen::ArrayXcd b = P.transpose() * w;
        Eigen::VectorXcd out(2 * m());
        out.head(m()) = (q / (-z * (1.0 + a) + s.array() / (1.0 + b))).matrix();
        out.tail(m()) = (q / (-z * (1.0 + b) + s.array() / (1.0 + a))).matrix();
        return out;
    }

    Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& x) const {
        const auto w = x.head(m());
        const auto wt = x.tail(m());
        const Eigen::ArrayXcd a = P * wt;
        const Eigen::ArrayXcd b = P.transpose() * w;
        const Eigen::ArrayXcd D = -z * (1.0 + a) + s.array() / (1.0 + b);
        const Eigen::ArrayXcd Dt = -z * (1.0 + b) + s.array() / (1.0 + a);
        const Eigen::MatrixXcd Pc = P.cast<cplx>();
        const Eigen::MatrixXcd Pt = P.transpose().cast<cplx>();
        Eigen::MatrixXcd J(2 * m(), 2 * m());
        J.topLeftCorner(m(), m()) = (q * s.array() / (D.square() * (1.0 + b).square())).matrix().asDiagonal() * Pt;
        J.topRightCorner(m(), m()) = (q * z / D.square()).matrix().asDiagonal() * Pc;
        J.bottomLeftCorner(m(), m()) = (q * z / Dt.square()).matrix().asDiagonal() * Pt;
        J.bottomRightCorner(m(), m()) = (q * s.array() / (Dt.square() * (1.0 + a).square())).matrix().asDiagonal() * Pc;
        return J;
    }
};

// Unknowns [p (K atoms); p~ (K atoms at (c u, lambda)); g (grid on [c, 1])].
// A = PA p~ + PG g,  B = PA^T p,  Bg = PG^T p, with PA(i, j) = P(u_i, c u_j) and
// PG(i, m) = P(u_i, r_m):
//   p_i  = h_i / (-z (1 + A_i) + lambda_i / (1 + c B_i))
//   p~_i = c h_i / (-z (1 + c B_i) + lambda_i / (1 + A_i))
//   g_m  = rho / (-z (1 + c Bg_m))
struct NonCenteredSystem {
    Eigen::MatrixXd PA;
    Eigen::MatrixXd PG;
    Eigen::VectorXd h;
    Eigen::VectorXd lambda;
    double c;
    double rho;
    cplx z;

    Eigen::Index K() const { return PA.rows(); }
    Eigen::Index G() const { return PG.cols(); }

    Eigen::VectorXcd initial() const {
        Eigen::VectorXcd x(2 * K() + G());
        x.head(K()) = (h.cast<cplx>() / -z);
        x.segment(K(), K()) = (c * h.cast<cplx>() / -z);
        x.tail(G()).setConstant(rho / -z);
        return x;
    }

    struct Parts {
        Eigen::ArrayXcd A, B, Bg, D, Dt, E;
    };

    Parts parts(const Eigen::VectorXcd& x) const {
        const auto p = x.head(K());
        const auto pt = x.segment(K(), K());
        const auto g = x.tail(G());
        Parts r;
        r.A = PA * pt;
        if (G() > 0) r.A += (PG * g).array();
        r.B = PA.transpose() * p;
        r.Bg = G() > 0 ? Eigen::ArrayXcd(PG.transpose() * p) : Eigen::ArrayXcd(0);
        r.D = -z * (1.0 + r.A) + lambda.array() / (1.0 + c * r.B);
        r.Dt = -z * (1.0 + c * r.B) + lambda.array() / (1.0 + r.A);
        r.E = -z * (1.0 + c * r.Bg);
        return r;
    }

    Eigen::VectorXcd map(const Eigen::VectorXcd& x) const {
        const Parts r = parts(x);
        Eigen::VectorXcd out(x.size());
        out.head(K()) = (h.array() / r.D).matrix();
        out.segment(K(), K()) = (c * h.array() / r.Dt).matrix();
        if (G() > 0) out.tail(G()) = (rho / r.E).matrix();
        return out;
    }

    Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& x) const {
        const Parts r = parts(x);
        const Eigen::MatrixXcd PAc = PA.cast<cplx>();
        const Eigen::MatrixXcd PAt = PA.transpose().cast<cplx>();
        const Eigen::Index k = K(), gsz = G();
        Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(2 * k + gsz, 2 * k + gsz);
        const Eigen::ArrayXcd D2 = r.D.square();
        const Eigen::ArrayXcd Dt2 = r.Dt.square();
        // rows of p
        J.block(0, 0, k, k) = (h.array() * lambda.array() * c / (D2 * (1.0 + c * r.B).square())).matrix().asDiagonal() * PAt;
        J.block(0, k, k, k) = (h.array() * z / D2).matrix().asDiagonal() * PAc;
        // rows of p~
        J.block(k, 0, k, k) = (c * c * h.array() * z / Dt2).matrix().asDiagonal() * PAt;
        J.block(k, k, k, k) = (c * h.array() * lambda.array() / (Dt2 * (1.0 + r.A).square())).matrix().asDiagonal() * PAc;
        if (gsz > 0) {
            const Eigen::MatrixXcd PGc = PG.cast<cplx>();
            J.block(0, 2 * k, k, gsz) = (h.array() * z / D2).matrix().asDiagonal() * PGc;
            J.block(k, 2 * k, k, gsz) = (c * h.array() * lambda.array() / (Dt2 * (1.0 + r.A).square())).matrix().asDiagonal() * PGc;
            J.block(2 * k, 0, gsz, k) = (rho * z * c / r.E.square()).matrix().asDiagonal() * PG.transpose().cast<cplx>();
        }
        return J;
    }
};

template <Profile2D P>
StieltjesKernel solve_centered_unchecked(const P& profile, double c, cplx z, const SolverConfig& cfg) {
    const auto grid = QuadratureGrid::midpoint(cfg.grid_size);
    CenteredSystem sys{tabulate(profile, grid.nodes, grid.nodes), c, z, grid.weight};
    auto res = run_fixed_point(sys, z, cfg);
    StieltjesKernel k;
    k.z = z;
    k.positions = grid.nodes;
    k.lambdas.assign(grid.nodes.size(), 0.0);
    k.weights = std::move(res.w);
    k.residual = res.residual;
    k.iterations = res.iterations;
    return k;
}

}  // namespace detail

/// Limiting Stieltjes kernel of Y Y^* for the variance profile `profile`
/// (|Phi|^2 on [0,1]^2) and ratio c = N/n:
///   w_u = (1/M) / (-z + (1/M) sum_t P(u, t) / (1 + c sum_x P(x, t) w_x)).
/// f(z) is the sum of the weights.
template <Profile2D P>
StieltjesKernel solve_centered(const P& profile, double c, cplx z, const SolverConfig& cfg = {}) {
    detail::check_upper(z, "solve_centered");
    detail::check_ratio(c, "solve_centered");
    cfg.validate();
    return detail::solve_centered_unchecked(profile, c, z, cfg);
}

/// Coupled kernels (pi, pi~) of the non-centered model with pseudo-diagonal
/// mean. pi lives on the atoms of H; pi~ on the atoms mapped to (c u, lambda)
/// plus a midpoint grid on [c, 1] x {0} carrying Lebesgue mass 1 - c.
template <Profile2D P>
KernelPair solve_noncentered(const P& profile, double c, const AtomicMeasureH& H, cplx z,
                             const SolverConfig& cfg = {}) {
    detail::check_upper(z, "solve_noncentered");
    detail::check_ratio(c, "solve_noncentered");
    cfg.validate();
    const auto& atoms = H.atoms();
    const auto K = static_cast<Eigen::Index>(atoms.size());
    std::vector<double> u(atoms.size()), cu(atoms.size());
    Eigen::VectorXd h(K), lambda(K);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        u[i] = atoms[i].u;
        cu[i] = c * atoms[i].u;
        h(static_cast<Eigen::Index>(i)) = atoms[i].weight;
        lambda(static_cast<Eigen::Index>(i)) = atoms[i].lambda;
    }
    const auto rest = c < 1.0 ? QuadratureGrid::midpoint(cfg.remainder_grid_size, c, 1.0) : QuadratureGrid{};
    detail::NonCenteredSystem sys{detail::tabulate(profile, u, cu), detail::tabulate(profile, u, rest.nodes),
                                  h, lambda, c, rest.weight, z};
    auto res = detail::run_fixed_point(sys, z, cfg);

    KernelPair out;
    out.pi.z = out.pi_tilde.z = z;
    out.pi.residual = out.pi_tilde.residual = res.residual;
    out.pi.iterations = out.pi_tilde.iterations = res.iterations;
    out.pi.positions = u;
    out.pi.lambdas.assign(lambda.data(), lambda.data() + K);
    out.pi.weights = res.w.head(K);
    out.pi_tilde.positions = cu;
    out.pi_tilde.positions.insert(out.pi_tilde.positions.end(), rest.nodes.begin(), rest.nodes.end());
    out.pi_tilde.lambdas = out.pi.lambdas;
    out.pi_tilde.lambdas.resize(out.pi_tilde.positions.size(), 0.0);
    out.pi_tilde.weights = res.w.tail(res.w.size() - K);
    return out;
}

/// Coupled kernels of the square model Z + A with Toeplitz A of symbol psi:
///   w_u  = (1/M) / (-z (1 + sum_t P(u,t) w~_t) + |psi(u)|^2 / (1 + sum_t P(t,u) w_t))
///   w~_u = (1/M) / (-z (1 + sum_t P(t,u) w_t) + |psi(u)|^2 / (1 + sum_t P(u,t) w~_t))
template <Profile2D P, Profile1D S>
KernelPair solve_square(const P& profile, const S& psi_sq, cplx z, const SolverConfig& cfg = {}) {
    detail::check_upper(z, "solve_square");
    cfg.validate();
    const auto grid = QuadratureGrid::midpoint(cfg.grid_size);
    Eigen::VectorXd s(grid.size());
    for (long k = 0; k < grid.size(); ++k) s(k) = psi_sq(grid.nodes[static_cast<std::size_t>(k)]);
    detail::SquareSystem sys{detail::tabulate(profile, grid.nodes, grid.nodes), s, z, grid.weight};
    auto res = detail::run_fixed_point(sys, z, cfg);

    KernelPair out;
    for (auto* k : {&out.pi, &out.pi_tilde}) {
        k->z = z;
        k->positions = grid.nodes;
        k->lambdas.assign(grid.nodes.size(), 0.0);
        k->residual = res.residual;
        k->iterations = res.iterations;
    }
    out.pi.lambdas.assign(s.data(), s.data() + s.size());
    out.pi_tilde.lambdas = out.pi.lambdas;
    out.pi.weights = res.w.head(grid.size());
    out.pi_tilde.weights = res.w.tail(grid.size());
    return out;
}

/// Limiting distribution function by Stieltjes inversion of a solver's f.
inline DistributionFunction limiting_cdf(const StieltjesFunction& f, std::span<const double> grid,
                                         double eta = 1e-3, unsigned threads = 1) {
    return invert_stieltjes_to_cdf(f, grid, eta, threads);
}

/// (1/N) sum_{i=1..N} delta_(i/N, |Lambda_ii|^2); rows past the diagonal get lambda = 0.
inline AtomicMeasureH measure_from_lambda(const FieldMatrix& lambda, long N) {
    if (lambda.rows() != N) throw std::invalid_argument("measure_from_lambda: row count differs from N");
    const Matrix& m = lambda.entries();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j && m(i, j) != cplx{}) throw std::invalid_argument("measure_from_lambda: matrix is not pseudo-diagonal");
    std::vector<AtomicMeasureH::Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(N));
    const double w = 1.0 / static_cast<double>(N);
    for (long i = 1; i <= N; ++i) {
        const double lam = (i - 1 < m.cols()) ? std::norm(m(i - 1, i - 1)) : 0.0;
        atoms.push_back({static_cast<double>(i) / static_cast<double>(N), lam, w});
    }
    return AtomicMeasureH(std::move(atoms));
}

/// Atoms (u_k, psi_sq(u_k)) with weight 1/M on the solver's midpoint grid:
/// the discrete image of Lebesgue measure under u -> (u, |psi(u)|^2).
template <Profile1D S>
AtomicMeasureH measure_from_symbol(const S& psi_sq, long M) {
    const auto grid = QuadratureGrid::midpoint(M);
    std::vector<AtomicMeasureH::Atom> atoms;
    for (double u : grid.nodes) atoms.push_back({u, psi_sq(u), grid.weight});
    return AtomicMeasureH(std::move(atoms));
}

struct KernelAxiomReport {
    bool bounded = true;           // |int g dpi| <= ||g|| / Im z
    bool imag_nonnegative = true;  // Im int g dpi >= 0 for g >= 0
    bool z_imag_nonnegative = true;  // Im (z int g dpi) >= 0 for g >= 0
    long functions_tested = 0;
    double worst_bound_ratio = 0.0;  // max |int g dpi| Im z / ||g||
    static constexpr const char* analyticity_note =
        "analyticity in z is not checked numerically";

    bool passes() const { return bounded && imag_nonnegative && z_imag_nonnegative; }
};

/// Checks the kernel axioms with g = 1 and eight nonnegative hat functions
/// centred at (j + 1/2)/8 with half-width 1/8, applied to the position coordinate.
inline KernelAxiomReport verify_kernel_axioms(const StieltjesKernel& k) {
    KernelAxiomReport r;
    const cplx z = k.z;
    const double y = z.imag();
    const auto check = [&](auto&& g, double sup) {
        const cplx I = k.integrate(g);
        const double scale = std::abs(I);
        ++r.functions_tested;
        if (y > 0.0) {
            r.worst_bound_ratio = std::max(r.worst_bound_ratio, scale * y / sup);
            if (scale * y > sup * (1.0 + 1e-12)) r.bounded = false;
        } else {
            r.bounded = false;
        }
        if (I.imag() < -1e-13 * scale) r.imag_nonnegative = false;
        if ((z * I).imag() < -1e-13 * std::abs(z) * scale) r.z_imag_nonnegative = false;
    };
    check([](double) { return 1.0; }, 1.0);
    for (int j = 0; j < 8; ++j) {
        const double centre = (j + 0.5) / 8.0;
        check([centre](double u) { return std::max(0.0, 1.0 - std::abs(u - centre) * 8.0); }, 1.0);
    }
    return r;
}

}  // namespace gramfield

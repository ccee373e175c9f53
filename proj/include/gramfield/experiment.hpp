#pragma once

// Experiment runner: simulation, spectra, limit solve and comparison for one
// JSON config. See README.md for the config schema and the files written.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gramfield/distribution.hpp"
#include "gramfield/filter_io.hpp"
#include "gramfield/limit_solver.hpp"
#include "gramfield/matgen.hpp"
#include "gramfield/parallel.hpp"
#include "gramfield/spectra.hpp"
#include "gramfield/symbols.hpp"
#include "gramfield/transforms.hpp"

namespace gramfield {

enum class ExperimentMode { centered, noncentered_pseudodiag, square_toeplitz, real_case };

inline std::string to_string(ExperimentMode m) {
    switch (m) {
        case ExperimentMode::centered: return "centered";
        case ExperimentMode::noncentered_pseudodiag: return "noncentered_pseudodiag";
        case ExperimentMode::square_toeplitz: return "square_toeplitz";
        case ExperimentMode::real_case: return "real_case";
    }
    return "centered";
}

inline ExperimentMode experiment_mode_from_string(const std::string& s) {
    for (auto m : {ExperimentMode::centered, ExperimentMode::noncentered_pseudodiag, ExperimentMode::square_toeplitz,
                   ExperimentMode::real_case}) {
        if (to_string(m) == s) return m;
    }
    throw std::invalid_argument("unknown mode: " + s);
}

/// Stieltjes inversion settings; lo/hi default to [min eigenvalue - 1, max eigenvalue + 1].
struct InversionConfig {
    double eta = 1e-3;
    double step = 1e-3;
    std::optional<double> lo;
    std::optional<double> hi;
};

inline const char* output_dir_env = "GRAMFIELD_OUTPUT_DIR";

inline std::string default_output_dir() {
    const char* env = std::getenv(output_dir_env);
    return env && *env ? std::string(env) : std::string("gramfield_out");
}

struct ExperimentConfig {
    ExperimentMode mode = ExperimentMode::centered;
    FilterSequence2D filter;
    std::optional<FilterSequence1D> toeplitz;  // square_toeplitz
    std::vector<cplx> lambda_diagonal;         // noncentered_pseudodiag, length min(N, n)
    long N = 0;
    long n = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<cplx> z_grid;
    SolverConfig solver;
    InversionConfig inversion;
    std::string output_dir;

    double ratio() const { return static_cast<double>(N) / static_cast<double>(n); }

    void validate() const {
        if (N < 1 || n < 1) throw std::invalid_argument("config: N and n must be positive");
        if (mode == ExperimentMode::square_toeplitz) {
            if (N != n) throw std::invalid_argument("config: square_toeplitz needs N = n");
            if (!toeplitz) throw std::invalid_argument("config: square_toeplitz needs a `toeplitz` sequence");
        } else if (N > n) {
            throw std::invalid_argument("config: N must not exceed n");
        }
        if (mode == ExperimentMode::noncentered_pseudodiag &&
            static_cast<long>(lambda_diagonal.size()) != std::min(N, n)) {
            throw std::invalid_argument("config: noncentered_pseudodiag needs a lambda diagonal of length min(N, n)");
        }
        if (mode == ExperimentMode::real_case && !filter.is_real()) {
            throw std::invalid_argument("config: real_case needs a real filter");
        }
        if (seeds.empty()) throw std::invalid_argument("config: seeds must not be empty");
        for (const auto& z : z_grid) {
            if (!(z.imag() > 0.0)) throw std::invalid_argument("config: every z in z_grid needs Im z > 0");
        }
        if (!(inversion.eta > 0.0) || !(inversion.step > 0.0)) {
            throw std::invalid_argument("config: inversion eta and step must be positive");
        }
        solver.validate();
    }
};

namespace detail {

inline cplx json_complex(const nlohmann::json& v) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw std::invalid_argument("config: complex numbers are [re, im] pairs");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

inline std::vector<cplx> json_complex_list(const nlohmann::json& v) {
    if (!v.is_array()) throw std::invalid_argument("config: expected a list of [re, im] pairs");
    std::vector<cplx> out;
    for (const auto& e : v) out.push_back(json_complex(e));
    return out;
}

}  // namespace detail

/// Parses a config document. `lambda` is either {"diagonal": [[re, im], ...]} or
/// {"symbol": <1-D filter>}; the latter sets Lambda_ii = psi(i / N), i = 1..min(N, n).
inline ExperimentConfig experiment_config_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("config: expected a JSON object");
    for (const char* key : {"mode", "N", "n", "seeds"}) {
        if (!doc.contains(key)) throw std::invalid_argument(std::string("config: missing `") + key + "`");
    }
    ExperimentConfig cfg;
    cfg.mode = experiment_mode_from_string(doc["mode"].get<std::string>());
    cfg.filter = doc.contains("filter") ? filter2d_from_json(doc["filter"]) : FilterSequence2D{};
    if (doc.contains("toeplitz")) cfg.toeplitz = filter1d_from_json(doc["toeplitz"]);
    cfg.N = doc["N"].get<long>();
    cfg.n = doc["n"].get<long>();
    for (const auto& s : doc["seeds"]) {
        if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<std::int64_t>() < 0)) throw std::invalid_argument("config: seeds are nonnegative integers");
        cfg.seeds.push_back(s.get<std::uint64_t>());
    }
    if (doc.contains("z_grid")) cfg.z_grid = detail::json_complex_list(doc["z_grid"]);
    if (doc.contains("lambda")) {
        const auto& l = doc["lambda"];
        if (l.contains("diagonal")) {
            cfg.lambda_diagonal = detail::json_complex_list(l["diagonal"]);
        } else if (l.contains("symbol")) {
            const SpectralSymbol1D psi(filter1d_from_json(l["symbol"]));
            for (long i = 1; i <= std::min(cfg.N, cfg.n); ++i) {
                cfg.lambda_diagonal.push_back(psi(static_cast<double>(i) / static_cast<double>(cfg.N)));
            }
        } else {
            throw std::invalid_argument("config: `lambda` needs `diagonal` or `symbol`");
        }
    }
    if (doc.contains("solver")) {
        const auto& s = doc["solver"];
        cfg.solver.grid_size = s.value("grid_size", cfg.solver.grid_size);
        cfg.solver.tolerance = s.value("tolerance", cfg.solver.tolerance);
        cfg.solver.max_iterations = s.value("max_iterations", cfg.solver.max_iterations);
        if (s.contains("damping")) cfg.solver.damping = s["damping"].get<double>();
        cfg.solver.remainder_grid_size = s.value("remainder_grid_size", cfg.solver.remainder_grid_size);
        cfg.solver.newton = s.value("newton", cfg.solver.newton);
        cfg.solver.newton_after = s.value("newton_after", cfg.solver.newton_after);
    }
    if (doc.contains("inversion")) {
        const auto& v = doc["inversion"];
        cfg.inversion.eta = v.value("eta", cfg.inversion.eta);
        cfg.inversion.step = v.value("step", cfg.inversion.step);
        if (v.contains("lo")) cfg.inversion.lo = v["lo"].get<double>();
        if (v.contains("hi")) cfg.inversion.hi = v["hi"].get<double>();
    }
    cfg.output_dir = doc.contains("output_dir") ? doc["output_dir"].get<std::string>() : default_output_dir();
    cfg.validate();
    return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    return experiment_config_from_json(nlohmann::json::parse(in));
}

/// f(z) of a limit solve plus its convergence record.
struct SolveRecord {
    cplx z{};
    cplx f{};
    double residual = 0.0;
    long iterations = 0;
    bool converged = true;
};

struct ExperimentReport {
    EmpiricalSpectrum pooled;
    DistributionFunction limit_cdf;
    std::vector<SolveRecord> solves;
    double levy = 0.0;
    double kolmogorov = 0.0;
    long bai_checked = 0;
    long bai_violations = 0;
    double alpha_mean = 0.0;
    double beta_mean = 0.0;
    double beta_tilde_mean = 0.0;
    long inversion_points = 0;
    long inversion_failures = 0;
    nlohmann::json summary;
};

/// Profile, limit solve and simulated matrices for one mode.
class ExperimentModel {
public:
    explicit ExperimentModel(const ExperimentConfig& cfg)
        : cfg_(cfg), symbol_(cfg.filter), margin_(cfg.filter.radius()) {
        if (cfg.mode == ExperimentMode::square_toeplitz) {
            psi_.emplace(*cfg.toeplitz);
            A_.emplace(build_toeplitz(*cfg.toeplitz, cfg.n));
            A_tilde_.emplace(build_circulant(*cfg.toeplitz, cfg.n));
        }
        if (cfg.mode == ExperimentMode::noncentered_pseudodiag) {
            lambda_.emplace(build_lambda(cfg.lambda_diagonal, cfg.N, cfg.n));
            H_.emplace(measure_from_lambda(*lambda_, cfg.N));
            // B with F_N (Z~ + B) F_n^* = Y + Lambda.
            const auto FN = fourier_matrix(cfg.N), Fn = fourier_matrix(cfg.n);
            lambda_pullback_.emplace(Matrix(FN.entries.adjoint() * lambda_->entries() * Fn.entries), FieldKind::generic);
        }
    }

    double profile(double u, double t) const {
        if (cfg_.mode == ExperimentMode::real_case) {
            const double r = folded_phi(symbol_, u, t);
            return r * r;
        }
        return std::norm(symbol_(u, t));
    }

    SolveRecord solve(cplx z) const {
        SolveRecord r;
        r.z = z;
        const auto prof = [this](double u, double t) { return profile(u, t); };
        try {
            switch (cfg_.mode) {
                case ExperimentMode::centered:
                case ExperimentMode::real_case: {
                    const auto k = solve_centered(prof, cfg_.ratio(), z, cfg_.solver);
                    r.f = k.total();
                    r.residual = k.residual;
                    r.iterations = k.iterations;
                    break;
                }
                case ExperimentMode::square_toeplitz: {
                    const auto& psi = *psi_;
                    const auto k = solve_square(prof, [&psi](double u) { return std::norm(psi(u)); }, z, cfg_.solver);
                    r.f = k.f();
                    r.residual = k.pi.residual;
                    r.iterations = k.pi.iterations;
                    break;
                }
                case ExperimentMode::noncentered_pseudodiag: {
                    const auto k = solve_noncentered(prof, cfg_.ratio(), *H_, z, cfg_.solver);
                    r.f = k.f();
                    r.residual = k.pi.residual;
                    r.iterations = k.pi.iterations;
                    break;
                }
            }
        } catch (const ConvergenceError& e) {
            r.f = e.last_f();
            r.residual = e.residual();
            r.iterations = e.iterations();
            r.converged = false;
        }
        return r;
    }

    struct Sample {
        FieldMatrix observed;  // matrix whose left Gram spectrum is compared to the limit
        FieldMatrix raw;       // Z + B
        FieldMatrix periodized;  // Z~ + B
        TraceStats stats;
    };

    Sample sample(std::uint64_t seed) const {
        const NoiseSpec spec{cfg_.mode == ExperimentMode::real_case ? NoiseDistribution::real_standard
                                                                    : NoiseDistribution::complex_standard,
                             seed};
        const auto noise = sample_noise(cfg_.N, cfg_.n, spec, margin_);
        const auto Z = build_Z(cfg_.filter, noise, cfg_.N, cfg_.n);
        const auto Zt = build_Z_tilde(cfg_.filter, noise, cfg_.N, cfg_.n);
        switch (cfg_.mode) {
            case ExperimentMode::square_toeplitz: {
                auto raw = add(Z, *A_);
                return {raw, raw, add(Zt, *A_tilde_), trace_stats(Z, Zt, *A_)};
            }
            case ExperimentMode::noncentered_pseudodiag: {
                const auto Y = congruence(fourier_matrix(cfg_.N), Zt, fourier_matrix(cfg_.n));
                return {add(Y, *lambda_), add(Z, *lambda_pullback_), add(Zt, *lambda_pullback_),
                        trace_stats(Z, Zt, *lambda_pullback_)};
            }
            default: {
                const Matrix zero = Matrix::Zero(cfg_.N, cfg_.n);
                return {Z, Z, Zt, trace_stats(Z.entries(), Zt.entries(), zero)};
            }
        }
    }

private:
    const ExperimentConfig& cfg_;
    SpectralSymbol2D symbol_;
    long margin_;
    std::optional<SpectralSymbol1D> psi_;
    std::optional<FieldMatrix> A_, A_tilde_, lambda_, lambda_pullback_;
    std::optional<AtomicMeasureH> H_;
};

namespace detail {

inline void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << text;
}

inline std::string solver_csv(const std::vector<SolveRecord>& rows) {
    std::string s = "re_z,im_z,re_f,im_f,residual,iterations\n";
    for (const auto& r : rows) {
        s += format17(r.z.real()) + ',' + format17(r.z.imag()) + ',' + format17(r.f.real()) + ',' +
             format17(r.f.imag()) + ',' + format17(r.residual) + ',' + std::to_string(r.iterations) + '\n';
    }
    return s;
}

inline std::string cdf_csv(const DistributionFunction& d) {
    std::ostringstream os;
    write_cdf_csv(os, d);
    return os.str();
}

}  // namespace detail

/// Runs the pipeline and writes, under cfg.output_dir:
///   spectra/seed_<seed>.csv  eigenvalues of the observed Gram matrix (header `eigenvalue`)
///   pooled_ecdf.csv          ECDF of all seeds' eigenvalues (`x,F`)
///   solver.csv               f(z) over z_grid (`re_z,im_z,re_f,im_f,residual,iterations`)
///   limit_cdf.csv            inverted limiting CDF (`x,F`)
///   summary.json             distances, Bai checks, alpha/beta means, solver failures
/// Outputs depend only on the config, never on `threads`.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg, unsigned threads = 1) {
    cfg.validate();
    namespace fs = std::filesystem;
    const ExperimentModel model(cfg);

    const std::size_t S = cfg.seeds.size();
    std::vector<EmpiricalSpectrum> spectra(S);
    std::vector<TraceStats> stats(S);
    std::vector<BaiBound> bai(S);
    parallel_for(S, threads, [&](std::size_t i) {
        const auto s = model.sample(cfg.seeds[i]);
        spectra[i] = gram_spectrum(s.observed);
        stats[i] = s.stats;
        bai[i] = bai_bound(s.raw, s.periodized);
    });

    ExperimentReport rep;
    rep.pooled = pool(spectra);

    rep.solves.resize(cfg.z_grid.size());
    parallel_for(cfg.z_grid.size(), threads, [&](std::size_t i) { rep.solves[i] = model.solve(cfg.z_grid[i]); });

    const double lo = cfg.inversion.lo.value_or(rep.pooled.eigenvalues.front() - 1.0);
    const double hi = cfg.inversion.hi.value_or(rep.pooled.eigenvalues.back() + 1.0);
    const auto grid = uniform_grid(lo, hi, cfg.inversion.step);
    std::vector<char> failed(grid.size(), 0);
    std::vector<double> x_of(grid.begin(), grid.end());
    const StieltjesFunction f = [&](cplx z) {
        const auto r = model.solve(z);
        if (!r.converged) {
            const auto k = static_cast<std::size_t>(std::lower_bound(x_of.begin(), x_of.end(), z.real()) - x_of.begin());
            if (k < failed.size()) failed[k] = 1;
        }
        return r.f;
    };
    rep.limit_cdf = limiting_cdf(f, grid, cfg.inversion.eta, threads);
    rep.inversion_points = static_cast<long>(grid.size());
    rep.inversion_failures = static_cast<long>(std::count(failed.begin(), failed.end(), 1));

    const auto ecdf = rep.pooled.cdf();
    rep.levy = levy_distance(ecdf, rep.limit_cdf);
    rep.kolmogorov = kolmogorov_distance(ecdf, rep.limit_cdf);

    double worst_ratio = 0.0;
    for (std::size_t i = 0; i < S; ++i) {
        ++rep.bai_checked;
        if (!bai[i].holds()) ++rep.bai_violations;
        if (bai[i].rhs > 0.0) worst_ratio = std::max(worst_ratio, bai[i].lhs / bai[i].rhs);
        rep.alpha_mean += stats[i].alpha / static_cast<double>(S);
        rep.beta_mean += stats[i].beta / static_cast<double>(S);
        rep.beta_tilde_mean += stats[i].beta_tilde / static_cast<double>(S);
    }

    nlohmann::json nonconverged = nlohmann::json::array();
    for (const auto& r : rep.solves) {
        if (!r.converged) nonconverged.push_back({r.z.real(), r.z.imag()});
    }
    auto& sm = rep.summary;
    sm["mode"] = to_string(cfg.mode);
    sm["N"] = cfg.N;
    sm["n"] = cfg.n;
    sm["c"] = cfg.ratio();
    sm["seeds"] = cfg.seeds;
    sm["pooled_eigenvalues"] = rep.pooled.eigenvalues.size();
    sm["levy"] = rep.levy;
    sm["kolmogorov"] = rep.kolmogorov;
    sm["limit_mass"] = rep.limit_cdf.total_mass();
    sm["bai"] = {{"checked", rep.bai_checked}, {"violations", rep.bai_violations}, {"max_lhs_over_rhs", worst_ratio}};
    sm["alpha_mean"] = rep.alpha_mean;
    sm["beta_mean"] = rep.beta_mean;
    sm["beta_tilde_mean"] = rep.beta_tilde_mean;
    sm["solver"] = {{"points", rep.solves.size()}, {"nonconverged", nonconverged}};
    sm["inversion"] = {{"eta", cfg.inversion.eta}, {"step", cfg.inversion.step}, {"lo", lo}, {"hi", hi},
                       {"points", rep.inversion_points}, {"nonconverged", rep.inversion_failures}};

    const fs::path out = cfg.output_dir;
    fs::create_directories(out / "spectra");
    for (std::size_t i = 0; i < S; ++i) {
        std::string s = "eigenvalue\n";
        for (double v : spectra[i].eigenvalues) s += detail::format17(v) + '\n';
        detail::write_text(out / "spectra" / ("seed_" + std::to_string(cfg.seeds[i]) + ".csv"), s);
    }
    detail::write_text(out / "pooled_ecdf.csv", detail::cdf_csv(ecdf));
    detail::write_text(out / "solver.csv", detail::solver_csv(rep.solves));
    detail::write_text(out / "limit_cdf.csv", detail::cdf_csv(rep.limit_cdf));
    detail::write_text(out / "summary.json", sm.dump(2) + '\n');
    return rep;
}

struct DistributionDistances {
    double levy = 0.0;
    double kolmogorov = 0.0;
};

inline DistributionDistances compare_distributions(const std::string& path_F, const std::string& path_G) {
    const auto F = read_cdf_csv(path_F);
    const auto G = read_cdf_csv(path_G);
    return {levy_distance(F, G), kolmogorov_distance(F, G)};
}

struct AlphaSweepRow {
    long N = 0;
    long n = 0;
    double mean_alpha = 0.0;
};

/// Mean alpha_n = (1/n) Tr (Z - Z~)(Z - Z~)^* over seeds, per size.
inline std::vector<AlphaSweepRow> sweep_alpha(const FilterSequence2D& h,
                                              const std::vector<std::pair<long, long>>& sizes,
                                              const std::vector<std::uint64_t>& seeds, unsigned threads = 1) {
    if (sizes.size() < 2) throw std::invalid_argument("sweep_alpha: need at least two sizes");
    if (seeds.empty()) throw std::invalid_argument("sweep_alpha: seeds must not be empty");
    std::vector<AlphaSweepRow> rows;
    for (const auto& [N, n] : sizes) {
        std::vector<double> alpha(seeds.size());
        parallel_for(seeds.size(), threads, [&](std::size_t i) {
            const auto noise = sample_noise(N, n, {NoiseDistribution::complex_standard, seeds[i]}, h.radius());
            const auto Z = build_Z(h, noise, N, n);
            const auto Zt = build_Z_tilde(h, noise, N, n);
            alpha[i] = (Z.entries() - Zt.entries()).squaredNorm() / static_cast<double>(n);
        });
        double mean = 0.0;
        for (double a : alpha) mean += a / static_cast<double>(seeds.size());
        rows.push_back({N, n, mean});
    }
    return rows;
}

inline bool alpha_nonincreasing(const std::vector<AlphaSweepRow>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].mean_alpha > rows[i - 1].mean_alpha) return false;
    }
    return true;
}

inline std::string alpha_sweep_csv(const std::vector<AlphaSweepRow>& rows) {
    std::string s = "N,n,mean_alpha\n";
    for (const auto& r : rows) s += std::to_string(r.N) + ',' + std::to_string(r.n) + ',' + detail::format17(r.mean_alpha) + '\n';
    return s;
}

}  // namespace gramfield

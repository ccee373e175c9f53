#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "gramfield/spectra.hpp"
#include "gramfield/transforms.hpp"
#include "monte_carlo.hpp"

using namespace gramfield;

namespace {

// |Phi(a, b)| = |Phi(a, -b)|: the folded grid is exact for this one.
const FilterSequence2D kSymmetric({{0, 0, 1.0}, {1, 0, 0.5}, {0, 1, 0.25}, {0, -1, 0.25}});
const FilterSequence2D kAsymmetric({{0, 0, 1.0}, {1, 0, 0.5}, {0, 1, 0.25}});

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

FieldMatrix periodized(const FilterSequence2D& h, long N, long n, NoiseDistribution d, std::uint64_t seed) {
    return build_Z_tilde(h, sample_noise(N, n, {d, seed}), N, n);
}

}  // namespace

TEST(FourierMatrix, SmallCases) {
    EXPECT_EQ(fourier_matrix(1).entries, Matrix::Constant(1, 1, 1.0));
    Matrix two(2, 2);
    two << 1.0, 1.0, 1.0, -1.0;
    two /= std::sqrt(2.0);
    EXPECT_LT(max_abs(fourier_matrix(2).entries - two), 1e-15);
    EXPECT_THROW(fourier_matrix(0), std::invalid_argument);
}

TEST(FourierMatrix, Unitary) {
    for (long p = 1; p <= 64; ++p) {
        const auto F = fourier_matrix(p);
        EXPECT_LT(max_abs(F.entries * F.entries.adjoint() - Matrix::Identity(p, p)), 1e-12) << p;
    }
    const auto F = fourier_matrix(5);
    EXPECT_LT(std::abs(F.entries(2, 3) - std::polar(1.0 / std::sqrt(5.0), 2.0 * std::numbers::pi * 6.0 / 5.0)), 1e-15);
}

TEST(RealOrthogonalMatrix, SmallCases) {
    EXPECT_EQ(real_orthogonal_matrix(1).entries, Matrix::Constant(1, 1, 1.0));
    Matrix two(2, 2);
    two << 1.0, 1.0, 1.0, -1.0;
    two /= std::sqrt(2.0);
    EXPECT_LT(max_abs(real_orthogonal_matrix(2).entries - two), 1e-15);

    const auto q3 = real_orthogonal_matrix(3).entries;
    const double s = std::sqrt(2.0 / 3.0);
    for (long j = 0; j < 3; ++j) {
        const double angle = 2.0 * std::numbers::pi * j / 3.0;
        EXPECT_NEAR(q3(0, j).real(), 1.0 / std::sqrt(3.0), 1e-15);
        EXPECT_NEAR(q3(1, j).real(), s * std::cos(angle), 1e-15);
        EXPECT_NEAR(q3(2, j).real(), s * std::sin(angle), 1e-15);
    }
}

TEST(RealOrthogonalMatrix, Orthogonal) {
    for (long p = 1; p <= 64; ++p) {
        const auto Q = real_orthogonal_matrix(p);
        EXPECT_EQ(Q.entries.imag().cwiseAbs().maxCoeff(), 0.0);
        EXPECT_LT(max_abs(Q.entries * Q.entries.transpose() - Matrix::Identity(p, p)), 1e-12) << p;
    }
}

TEST(Congruence, IdentityAndDimensionChecks) {
    const auto F = fourier_matrix(6);
    const FieldMatrix I(Matrix::Identity(6, 6), FieldKind::generic);
    EXPECT_LT(max_abs(congruence(F, I, F).entries() - Matrix::Identity(6, 6)), 1e-12);
    const FieldMatrix rect(Matrix::Ones(6, 4), FieldKind::generic);
    EXPECT_THROW(congruence(F, rect, F), std::invalid_argument);
}

TEST(Congruence, PreservesGramSpectrum) {
    const long N = 24, n = 40;
    const auto zt = periodized(kAsymmetric, N, n, NoiseDistribution::complex_standard, 3);
    for (auto make : {fourier_matrix, real_orthogonal_matrix}) {
        const auto y = congruence(make(N), zt, make(n));
        const auto a = gram_spectrum(zt).eigenvalues, b = gram_spectrum(y).eigenvalues;
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-9 * std::max(1.0, a.back()));
    }
}

TEST(VarianceProfile, Grids) {
    const SpectralSymbol2D one(FilterSequence2D({{0, 0, 1.0}}));
    EXPECT_EQ(variance_profile_grid(one, 5, 7), Eigen::MatrixXd::Ones(5, 7));
    EXPECT_EQ(folded_frequency(0), 0);
    EXPECT_EQ(folded_frequency(1), 1);
    EXPECT_EQ(folded_frequency(2), 1);
    EXPECT_EQ(folded_frequency(3), 2);

    const SpectralSymbol2D s(kAsymmetric);
    const auto g = variance_profile_grid(s, 8, 6, ProfileFlavor::real_folded);
    EXPECT_DOUBLE_EQ(g(3, 4), std::norm(s(2.0 / 8.0, 2.0 / 6.0)));
    EXPECT_EQ(g.row(1), g.row(2));
}

TEST(VarianceProfile, AveragedProfileEqualsFoldedOnlyForMirrorSymmetricSymbols) {
    const long N = 32, n = 32;
    const SpectralSymbol2D sym(kSymmetric), asym(kAsymmetric);
    EXPECT_LT((real_congruence_variance(sym, N, n) - variance_profile_grid(sym, N, n, ProfileFlavor::real_folded))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-12);
    const Eigen::MatrixXd ratio = real_congruence_variance(asym, N, n).cwiseQuotient(
        variance_profile_grid(asym, N, n, ProfileFlavor::real_folded));
    EXPECT_GT(ratio.maxCoeff(), 1.3);
}

TEST(VarianceProfile, FourierCongruenceEntryVariance) {
    const long N = 16, n = 24;
    const SpectralSymbol2D s(kAsymmetric);
    const auto F_N = fourier_matrix(N), F_n = fourier_matrix(n);
    const auto report = mc::entry_variance(
        [&](std::uint64_t seed) {
            return congruence(F_N, periodized(kAsymmetric, N, n, NoiseDistribution::complex_standard, seed), F_n)
                .entries();
        },
        400, variance_profile_grid(s, N, n), double(n));
    EXPECT_LE(report.fraction_outside(), 0.01) << report.outside << " of " << report.entries;
}

TEST(VarianceProfile, RealCongruenceMatchesFoldedGridForMirrorSymmetricFilter) {
    const long N = 64, n = 64;
    const SpectralSymbol2D s(kSymmetric);
    const auto Q_N = real_orthogonal_matrix(N), Q_n = real_orthogonal_matrix(n);
    const auto report = mc::entry_variance(
        [&](std::uint64_t seed) {
            return congruence(Q_N, periodized(kSymmetric, N, n, NoiseDistribution::real_standard, seed), Q_n)
                .entries();
        },
        200, variance_profile_grid(s, N, n, ProfileFlavor::real_folded), double(n));
    EXPECT_LE(report.fraction_outside(), 0.01) << report.outside << " of " << report.entries;
}

TEST(VarianceProfile, RealCongruenceMatchesAveragedProfile) {
    const long N = 32, n = 32;
    const SpectralSymbol2D s(kAsymmetric);
    const auto Q_N = real_orthogonal_matrix(N), Q_n = real_orthogonal_matrix(n);
    const auto report = mc::entry_variance(
        [&](std::uint64_t seed) {
            return congruence(Q_N, periodized(kAsymmetric, N, n, NoiseDistribution::real_standard, seed), Q_n)
                .entries();
        },
        400, real_congruence_variance(s, N, n), double(n));
    EXPECT_LE(report.fraction_outside(), 0.01) << report.outside << " of " << report.entries;
}

TEST(Whiteness, IidNoisePasses) {
    std::vector<FieldMatrix> pop;
    for (std::uint64_t s = 0; s < 200; ++s) pop.push_back(sample_noise(16, 16, {NoiseDistribution::complex_standard, s}));
    const auto r = whiteness_check(pop);
    EXPECT_TRUE(r.passes());
    EXPECT_DOUBLE_EQ(r.threshold, 4.0 / std::sqrt(200.0));
    EXPECT_EQ(r.pairs_tested, 2000);
    EXPECT_GE(r.fraction_below, 0.95);
}

TEST(Whiteness, FourierCongruencePasses) {
    const long N = 16, n = 16;
    const auto F = fourier_matrix(N);
    std::vector<FieldMatrix> pop;
    for (std::uint64_t s = 0; s < 200; ++s)
        pop.push_back(congruence(F, periodized(kAsymmetric, N, n, NoiseDistribution::complex_standard, s), F));
    EXPECT_TRUE(whiteness_check(pop).passes());
}

TEST(Whiteness, CorrelatedFieldIsFlagged) {
    const long N = 16, n = 16;
    std::vector<FieldMatrix> pop;
    const FilterSequence2D smooth({{0, 0, 1.0}, {1, 0, 1.0}, {0, 1, 1.0}, {1, 1, 1.0}});
    for (std::uint64_t s = 0; s < 200; ++s)
        pop.push_back(periodized(smooth, N, n, NoiseDistribution::complex_standard, s));
    const auto r = whiteness_check(pop, 20000);
    EXPECT_GT(r.max_correlation, 0.4);
}

TEST(Whiteness, FourierOfRealFieldFlagsMirrorPairs) {
    const long N = 16, n = 16;
    const auto F = fourier_matrix(N);
    std::vector<FieldMatrix> pop;
    for (std::uint64_t s = 0; s < 200; ++s)
        pop.push_back(congruence(F, periodized(kAsymmetric, N, n, NoiseDistribution::real_standard, s), F));
    const auto r = whiteness_check(pop);
    EXPECT_TRUE(r.mirror_flagged());
    EXPECT_FALSE(r.passes());
    EXPECT_NEAR(r.mirror_max_correlation, 1.0, 1e-9);
}

TEST(Whiteness, RejectsTinyPopulations) {
    std::vector<FieldMatrix> one{sample_noise(4, 4, {})};
    EXPECT_THROW(whiteness_check(one), std::invalid_argument);
}

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ppspec/errors.hpp"
#include "ppspec/hawkes.hpp"

using namespace ppspec;
using cd = std::complex<double>;

namespace {

HawkesModel scalar(double nu, double alpha, double beta) {
    RealVector n(1);
    n << nu;
    RealMatrix a(1, 1);
    a << alpha;
    RealMatrix b(1, 1);
    b << beta;
    return {n, a, b};
}

HawkesModel two_dim() {
    RealVector nu(2);
    nu << 0.2, 0.2;
    RealMatrix a(2, 2);
    a << 0.0, 0.6, 0.0, 0.4;
    return {nu, a, RealMatrix::Constant(2, 2, 0.86)};
}

// Block (a) plus an independent third process.
HawkesModel three_dim() {
    RealVector nu = RealVector::Constant(3, 0.2);
    RealMatrix a = RealMatrix::Zero(3, 3);
    a(0, 1) = 0.6;
    a(1, 1) = 0.4;
    return {nu, a, RealMatrix::Constant(3, 3, 0.86)};
}

} // namespace

TEST(HawkesModel, ValidatesParameters) {
    RealVector nu(1);
    nu << -1.0;
    EXPECT_THROW(HawkesModel(nu, RealMatrix::Zero(1, 1), RealMatrix::Ones(1, 1)), InvalidModel);
    EXPECT_THROW(scalar(0.0, 0.0, 1.0), InvalidModel);
    EXPECT_THROW(scalar(1.0, 0.5, 0.0), InvalidModel);
    EXPECT_THROW(scalar(1.0, -0.1, 1.0), InvalidModel);
    EXPECT_THROW(HawkesModel(RealVector::Ones(2), RealMatrix::Zero(1, 1), RealMatrix::Ones(1, 1)), InvalidModel);
    EXPECT_NO_THROW(scalar(1.0, 0.0, 0.0)); // beta is free where alpha = 0
}

TEST(SpectralRadius, Examples) {
    EXPECT_DOUBLE_EQ(spectral_radius_G0(HawkesModel::poisson(4, 1.0)), 0.0);
    EXPECT_NEAR(spectral_radius_G0(scalar(0.2, 0.4, 0.86)), 0.4 / 0.86, 1e-12);
    EXPECT_NEAR(spectral_radius_G0(scalar(0.2, 0.4, 0.86)), 0.46512, 1e-5);
}

TEST(SpectralRadius, PresetsAreStationary) {
    for (Scenario s : {Scenario::a, Scenario::b, Scenario::c}) {
        for (std::size_t p : {12u, 48u, 96u}) {
            EXPECT_LT(spectral_radius_G0(preset(s, p)), 1.0);
        }
    }
    EXPECT_NEAR(spectral_radius_G0(preset(Scenario::b, 12)), 0.83, 0.02);
    EXPECT_NEAR(spectral_radius_G0(preset(Scenario::c, 12)), 0.83, 0.02);
}

TEST(StationaryIntensity, Examples) {
    const RealVector nu = RealVector::Constant(3, 0.2);
    const RealVector l0 = stationary_intensity(HawkesModel(nu, RealMatrix::Zero(3, 3), RealMatrix::Ones(3, 3)));
    EXPECT_LE((l0 - nu).cwiseAbs().maxCoeff(), 1e-15);

    EXPECT_NEAR(stationary_intensity(scalar(0.2, 0.4, 0.86))[0], oracle::hawkes_rate_scalar(0.2, 0.4, 0.86), 1e-12);
    EXPECT_NEAR(stationary_intensity(scalar(0.2, 0.4, 0.86))[0], 0.37391, 1e-5);

    // (I - G0) Lambda = nu solved with the explicit 2x2 inverse.
    oracle::Mat m(2, 2);
    m << 1.0, -0.6 / 0.86, 0.0, 1.0 - 0.4 / 0.86;
    const oracle::Mat inv = oracle::inverse_2x2(m);
    const RealVector l = stationary_intensity(two_dim());
    EXPECT_NEAR(l[0], (inv(0, 0) * 0.2 + inv(0, 1) * 0.2).real(), 1e-12);
    EXPECT_NEAR(l[1], (inv(1, 0) * 0.2 + inv(1, 1) * 0.2).real(), 1e-12);
}

TEST(StationaryIntensity, RejectsExplosiveModel) {
    EXPECT_THROW((void)stationary_intensity(scalar(0.2, 1.0, 0.86)), NotStationary);
    EXPECT_THROW((void)true_spectrum(scalar(0.2, 1.0, 0.86), 0.1), NotStationary);
    EXPECT_THROW((void)simulate(scalar(0.2, 1.0, 0.86), 10.0, 1, 1), NotStationary);
}

TEST(Transfer, Examples) {
    const HawkesModel m = two_dim();
    const ComplexMatrix g0 = transfer(m, 0.0);
    EXPECT_NEAR(g0(0, 1).real(), 0.6 / 0.86, 1e-15);
    EXPECT_EQ(g0(1, 0), cd{});

    const cd g = transfer(scalar(0.2, 0.4, 0.86), 0.86)(0, 0);
    const cd expected = 0.4 / cd(0.86, 0.86);
    EXPECT_NEAR(std::abs(g - expected), 0.0, 1e-15);
    EXPECT_NEAR(g.real(), 0.4 / (2 * 0.86), 1e-15);
    EXPECT_NEAR(g.imag(), -0.4 / (2 * 0.86), 1e-15);

    double prev = std::abs(transfer(scalar(0.2, 0.4, 0.86), 0.0)(0, 0));
    for (double w = 0.1; w < 10.0; w += 0.1) {
        const double now = std::abs(transfer(scalar(0.2, 0.4, 0.86), -w)(0, 0));
        EXPECT_LT(now, prev);
        prev = now;
    }
}

TEST(TrueSpectrum, PoissonIsDiagonal) {
    const SpectralMatrix s = true_spectrum(HawkesModel::poisson(3, 2.5), 0.7);
    for (std::size_t q = 0; q < 3; ++q) {
        EXPECT_NEAR(s.matrix.diag(q), 2.5 / (2 * std::numbers::pi), 1e-15);
        for (std::size_t r = q + 1; r < 3; ++r) {
            EXPECT_EQ(s.matrix(q, r), cd{});
        }
    }
}

TEST(TrueSpectrum, ScalarAtZero) {
    const double lambda = oracle::hawkes_rate_scalar(0.2, 0.4, 0.86);
    const double expected = lambda / (2 * std::numbers::pi * std::pow(1 - 0.4 / 0.86, 2));
    EXPECT_NEAR(true_spectrum(scalar(0.2, 0.4, 0.86), 0.0).matrix.diag(0), expected, 1e-12);
    EXPECT_NEAR(expected, 0.20800, 1e-5);
}

TEST(TrueSpectrum, PresetsArePositiveDefinite) {
    for (Scenario s : {Scenario::a, Scenario::b, Scenario::c}) {
        for (double w : {0.0, 0.0628, 1.0, 5.0}) {
            EXPECT_GT(min_eigenvalue(true_spectrum(preset(s, 12), w).matrix), 0.0);
        }
    }
}

TEST(TrueSpectrum, NegativeFrequencyIsTranspose) {
    for (Scenario s : {Scenario::a, Scenario::b, Scenario::c}) {
        const ComplexMatrix pos = true_spectrum(preset(s, 12), 0.7).matrix.dense();
        const ComplexMatrix neg = true_spectrum(preset(s, 12), -0.7).matrix.dense();
        EXPECT_LE((neg - pos.transpose()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(TrueSpectrum, BlockDiagonalStaysBlockDiagonal) {
    for (Scenario s : {Scenario::a, Scenario::b}) {
        const SpectralMatrix sp = true_spectrum(preset(s, 12), 0.0628);
        const GroundTruth t = true_inverse_and_edges(preset(s, 12), 0.0628);
        for (std::size_t q = 0; q < 12; ++q) {
            for (std::size_t r = 0; r < 12; ++r) {
                if (q / 3 != r / 3) {
                    EXPECT_LT(std::abs(sp.matrix(q, r)), 1e-12);
                    EXPECT_LT(std::abs(t.theta(q, r)), 1e-12);
                }
            }
        }
    }
}

TEST(TrueInverse, MatchesNumericalInverse) {
    for (Scenario s : {Scenario::a, Scenario::b, Scenario::c}) {
        const ComplexMatrix spec = true_spectrum(preset(s, 12), 0.3).matrix.dense();
        const GroundTruth t = true_inverse_and_edges(preset(s, 12), 0.3);
        EXPECT_LE((t.theta.dense() * spec - ComplexMatrix::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(TrueInverse, PoissonHasNoEdges) {
    const GroundTruth t = true_inverse_and_edges(HawkesModel::poisson(3, 2.0), 0.5);
    EXPECT_TRUE(t.edges.empty());
    for (std::size_t q = 0; q < 3; ++q) {
        EXPECT_NEAR(t.theta.diag(q), 2 * std::numbers::pi / 2.0, 1e-12);
    }
}

TEST(TrueInverse, IndependentNodeIsIsolated) {
    const HawkesModel m = three_dim();
    const GroundTruth t = true_inverse_and_edges(m, 0.0628);
    const oracle::Mat inv = oracle::inverse_3x3(true_spectrum(m, 0.0628).matrix.dense());
    EXPECT_LE((t.theta.dense() - inv).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_EQ(t.edges, (EdgeSet{{0, 1}}));
}

TEST(TrueInverse, EdgeSetStableAcrossTolerances) {
    const HawkesModel m = preset(Scenario::c, 12);
    const GroundTruth ref = true_inverse_and_edges(m, 0.0628);
    double min_nonzero = 1e300;
    for (const auto& [q, r] : ref.edges) {
        min_nonzero = std::min(min_nonzero, std::abs(ref.theta(q, r)));
    }
    for (double tol : {1e-9, 1e-6, 0.5 * min_nonzero}) {
        EXPECT_EQ(true_inverse_and_edges(m, 0.0628, tol).edges, ref.edges);
    }
}

TEST(Simulate, PoissonRates) {
    const HawkesModel m = HawkesModel::poisson(3, 0.2);
    const EventData d = simulate(m, 5000.0, 1, 3);
    for (std::size_t q = 0; q < 3; ++q) {
        const double rate = static_cast<double>(d.channel_count(q)) / 5000.0;
        EXPECT_NEAR(rate, 0.2, 4 * std::sqrt(0.2 / 5000.0));
    }
}

TEST(Simulate, ScalarHawkesRate) {
    const double lambda = oracle::hawkes_rate_scalar(0.2, 0.4, 0.86);
    const EventData d = simulate(scalar(0.2, 0.4, 0.86), 5000.0, 1, 4);
    // The count of a self-exciting process is overdispersed: Var N(T) / T
    // tends to Lambda / (1 - G(0))^2.
    const double se = std::sqrt(lambda / std::pow(1 - 0.4 / 0.86, 2) / 5000.0);
    EXPECT_NEAR(static_cast<double>(d.channel_count(0)) / 5000.0, lambda, 4 * se);
}

TEST(Simulate, PresetRatesMatchStationaryIntensity) {
    for (Scenario s : {Scenario::a, Scenario::b, Scenario::c}) {
        const HawkesModel m = preset(s, 12);
        const EventData d = simulate(m, 5000.0, 1, 5);
        const RealVector l = stationary_intensity(m);
        const SpectralMatrix s0 = true_spectrum(m, 0.0);
        for (std::size_t q = 0; q < 12; ++q) {
            const double se = std::sqrt(2 * std::numbers::pi * s0.matrix.diag(q) / 5000.0);
            EXPECT_NEAR(static_cast<double>(d.channel_count(q)) / 5000.0, l[static_cast<Eigen::Index>(q)], 4 * se);
        }
    }
}

TEST(Simulate, DeterministicInSeed) {
    const HawkesModel m = preset(Scenario::b, 12);
    EXPECT_EQ(simulate(m, 200.0, 10, 42), simulate(m, 200.0, 10, 42));
    EXPECT_NE(simulate(m, 200.0, 10, 42), simulate(m, 200.0, 10, 43));
}

TEST(Simulate, TrialsStayInTheirSegments) {
    const EventData d = simulate(preset(Scenario::a, 12), 200.0, 10, 6);
    for (std::size_t k = 0; k < 10; ++k) {
        for (std::size_t q = 0; q < 12; ++q) {
            for (double t : d.events(k, q)) {
                EXPECT_GT(t, 20.0 * k);
                EXPECT_LE(t, 20.0 * (k + 1));
            }
        }
    }
}

TEST(Simulate, BudgetIsEnforced) {
    EXPECT_THROW((void)simulate(HawkesModel::poisson(2, 1.0), 1e6, 1, 1, {1e3}), BudgetExceeded);
    EXPECT_THROW((void)simulate(HawkesModel::poisson(2, 1.0), 0.0, 1, 1), InvalidArgument);
    EXPECT_THROW((void)simulate(HawkesModel::poisson(2, 1.0), 1.0, 0, 1), InvalidArgument);
}

TEST(Preset, ScenarioAMatchesPrintedBlocks) {
    const RealMatrix a = preset(Scenario::a, 12).alpha();
    for (int b = 0; b < 4; ++b) {
        const int o = 3 * b;
        EXPECT_DOUBLE_EQ(a(o, o + 1), 0.60);
        EXPECT_DOUBLE_EQ(a(o + 1, o + 1), 0.40);
        EXPECT_DOUBLE_EQ(a(o + 2, o + 2), 0.40);
    }
    EXPECT_DOUBLE_EQ(a.sum(), 4 * 1.4);
    EXPECT_DOUBLE_EQ(preset(Scenario::a, 12).nu().minCoeff(), 0.2);
    EXPECT_DOUBLE_EQ(preset(Scenario::a, 12).beta().maxCoeff(), 0.86);
}

TEST(Preset, ScenarioBBlocks) {
    const RealMatrix a = preset(Scenario::b, 12).alpha();
    EXPECT_DOUBLE_EQ(a(9, 11), 0.25);
    EXPECT_DOUBLE_EQ(a(10, 11), 0.40);
    EXPECT_DOUBLE_EQ(a(0, 3), 0.0);
    EXPECT_TRUE(a.isApprox(a.transpose()));
}

TEST(Preset, ScenarioCSparseEntries) {
    const RealMatrix a = preset(Scenario::c, 12).alpha();
    EXPECT_DOUBLE_EQ(a(0, 2), 0.60);
    EXPECT_DOUBLE_EQ(a(2, 0), 0.60);
    EXPECT_DOUBLE_EQ(a(2, 3), 0.80);
    EXPECT_DOUBLE_EQ(a(3, 2), 0.80);
    EXPECT_DOUBLE_EQ(a(1, 9), 0.50);
    EXPECT_DOUBLE_EQ(a(9, 1), 0.50);
}

TEST(Preset, LargerDimensionsRepeatTheBlock) {
    const RealMatrix a12 = preset(Scenario::c, 12).alpha();
    const RealMatrix a48 = preset(Scenario::c, 48).alpha();
    EXPECT_TRUE(a48.block(36, 36, 12, 12).isApprox(a12));
    EXPECT_DOUBLE_EQ(a48.block(0, 12, 12, 12).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Preset, RejectsUnsupportedDimension) {
    EXPECT_THROW((void)preset(Scenario::a, 10), InvalidArgument);
    EXPECT_THROW((void)preset(Scenario::c, 6), InvalidArgument);
    EXPECT_THROW((void)preset(Scenario::a, 0), InvalidArgument);
    EXPECT_THROW((void)parse_scenario("d"), InvalidArgument);
    EXPECT_EQ(parse_scenario("b"), Scenario::b);
}

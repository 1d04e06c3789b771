#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ppspec/errors.hpp"
#include "ppspec/hermitian.hpp"

using namespace ppspec;
using cd = std::complex<double>;

namespace {

HermitianMatrix dense2(cd a, cd b, cd d) {
    ComplexMatrix m(2, 2);
    m << a, b, std::conj(b), d;
    return HermitianMatrix::from_dense(m);
}

} // namespace

TEST(HermitianMatrix, StoresUpperTriangleAndConjugatesBelow) {
    const HermitianMatrix h = dense2(2.0, cd(1.0, 2.0), 3.0);
    EXPECT_EQ(h(0, 1), cd(1.0, 2.0));
    EXPECT_EQ(h(1, 0), cd(1.0, -2.0));
    EXPECT_EQ(h.packed().size(), 3u);
    EXPECT_DOUBLE_EQ(h.trace(), 5.0);
}

TEST(HermitianMatrix, RejectsNonHermitianInput) {
    ComplexMatrix m(2, 2);
    m << 1.0, cd(0.0, 1.0), cd(0.0, 1.0), 1.0;
    EXPECT_THROW((void)HermitianMatrix::from_dense(m), InvalidArgument);
}

TEST(HermitianMatrix, AcceptsAsymmetryWithinRelativeTolerance) {
    ComplexMatrix m(2, 2);
    m << 1.0, cd(1.0, 1e-14), cd(1.0, 0.0), 1.0;
    EXPECT_NO_THROW((void)HermitianMatrix::from_dense(m));
}

TEST(HermitianMatrix, RejectsNonFiniteEntries) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(1, 1) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW((void)HermitianMatrix::from_dense(m), InvalidArgument);
    EXPECT_THROW((void)HermitianMatrix::hermitian_part(m), InvalidArgument);
}

TEST(HermitianMatrix, PackedDiagonalMustBeReal) {
    EXPECT_THROW((void)HermitianMatrix::from_packed(1, {cd(1.0, 0.5)}), InvalidArgument);
    EXPECT_NO_THROW((void)HermitianMatrix::from_packed(1, {cd(1.0, 0.0)}));
}

TEST(EigHermitian, Identity) {
    const EigenDecomposition e = eig_hermitian(HermitianMatrix::identity(2));
    EXPECT_DOUBLE_EQ(e.values[0], 1.0);
    EXPECT_DOUBLE_EQ(e.values[1], 1.0);
    EXPECT_LE((e.vectors - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(EigHermitian, DiagonalAscending) {
    const double d[] = {5.0, 2.0};
    const EigenDecomposition e = eig_hermitian(HermitianMatrix::diagonal(d));
    EXPECT_DOUBLE_EQ(e.values[0], 2.0);
    EXPECT_DOUBLE_EQ(e.values[1], 5.0);
}

TEST(EigHermitian, TwoByTwoComplex) {
    // Characteristic polynomial (2 - c)^2 - |i|^2 = 0 gives c = 1, 3.
    const EigenDecomposition e = eig_hermitian(dense2(2.0, cd(0.0, 1.0), 2.0));
    EXPECT_NEAR(e.values[0], 1.0, 1e-14);
    EXPECT_NEAR(e.values[1], 3.0, 1e-14);
}

TEST(EigHermitian, RoundTripAndUnitarity) {
    for (std::size_t p : {1u, 2u, 5u, 16u, 32u}) {
        const oracle::Mat a = oracle::random_hermitian(p, 100 + p);
        const EigenDecomposition e = eig_hermitian(HermitianMatrix::hermitian_part(a));
        const auto n = static_cast<Eigen::Index>(p);
        EXPECT_LE((e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
        const ComplexMatrix back = e.vectors * e.values.cast<cd>().asDiagonal() * e.vectors.adjoint();
        EXPECT_LE((back - a).cwiseAbs().maxCoeff(), 1e-9) << "p=" << p;
        for (Eigen::Index i = 1; i < n; ++i) {
            EXPECT_LE(e.values[i - 1], e.values[i]);
        }
    }
}

TEST(LogDetPd, Examples) {
    EXPECT_DOUBLE_EQ(log_det_pd(HermitianMatrix::identity(4)), 0.0);
    const double d[] = {std::exp(1.0), std::exp(2.0)};
    EXPECT_NEAR(log_det_pd(HermitianMatrix::diagonal(d)), 3.0, 1e-14);
    EXPECT_NEAR(log_det_pd(dense2(2.0, cd(0.0, 1.0), 2.0)), std::log(3.0), 1e-14);
}

TEST(LogDetPd, RejectsIndefinite) {
    const double d[] = {1.0, -1.0};
    EXPECT_THROW((void)log_det_pd(HermitianMatrix::diagonal(d)), NotPositiveDefinite);
    EXPECT_THROW((void)log_det_pd(HermitianMatrix(2)), NotPositiveDefinite);
}

TEST(LogDetPd, AdditiveOverBlockDiagonal) {
    const oracle::Mat a = oracle::random_hpd(3, 1);
    const oracle::Mat b = oracle::random_hpd(4, 2);
    oracle::Mat block = oracle::Mat::Zero(7, 7);
    block.topLeftCorner(3, 3) = a;
    block.bottomRightCorner(4, 4) = b;
    const double lhs = log_det_pd(HermitianMatrix::hermitian_part(a)) + log_det_pd(HermitianMatrix::hermitian_part(b));
    EXPECT_NEAR(lhs, log_det_pd(HermitianMatrix::hermitian_part(block)), 1e-9);
}

TEST(MatrixNorm, Examples) {
    EXPECT_NEAR(matrix_norm(HermitianMatrix::identity(3), NormKind::frobenius), std::sqrt(3.0), 1e-15);
    EXPECT_DOUBLE_EQ(matrix_norm(dense2(0.0, cd(3.0, 4.0), 0.0), NormKind::elementwise_max), 5.0);
    EXPECT_DOUBLE_EQ(matrix_norm(dense2(1.0, cd(3.0, 4.0), 1.0), NormKind::row_sum_max), 6.0);
}

TEST(MatrixNorm, FrobeniusCountsBothTriangles) {
    const HermitianMatrix h = dense2(0.0, cd(3.0, 4.0), 0.0);
    EXPECT_NEAR(matrix_norm(h, NormKind::frobenius), std::sqrt(50.0), 1e-14);
    EXPECT_NEAR(matrix_norm(h.dense(), NormKind::frobenius), std::sqrt(50.0), 1e-14);
}

TEST(ConditionNumber, Examples) {
    EXPECT_DOUBLE_EQ(condition_number(HermitianMatrix::identity(3)), 1.0);
    const double d[] = {10.0, 1.0};
    EXPECT_NEAR(condition_number(HermitianMatrix::diagonal(d)), 10.0, 1e-12);
}

TEST(ConditionNumber, RankDeficientIsInfinite) {
    Eigen::VectorXcd v(3);
    v << cd(1.0, 0.5), cd(-0.3, 2.0), cd(0.7, -1.1);
    const HermitianMatrix h = HermitianMatrix::hermitian_part(v * v.adjoint());
    EXPECT_TRUE(std::isinf(condition_number(h)));
    EXPECT_TRUE(std::isinf(condition_number(HermitianMatrix(2))));
}

TEST(ConditionNumber, ScaleInvariant) {
    const HermitianMatrix h = HermitianMatrix::hermitian_part(oracle::random_hpd(6, 9, 0.1, 7.0));
    const double c = condition_number(h);
    for (double t : {1e-6, 0.3, 17.0, 1e8}) {
        EXPECT_NEAR(condition_number(h.scaled(t)) / c, 1.0, 1e-9);
    }
}

TEST(InversePd, MatchesClosedFormInverse) {
    const oracle::Mat a = oracle::random_hpd(3, 5);
    const HermitianMatrix inv = inverse_pd(HermitianMatrix::hermitian_part(a));
    EXPECT_LE((inv.dense() - oracle::inverse_3x3(a)).cwiseAbs().maxCoeff(), 1e-12);
    const double d[] = {1.0, 0.0};
    EXPECT_THROW((void)inverse_pd(HermitianMatrix::diagonal(d)), NotPositiveDefinite);
}

TEST(SpectralMap, AppliesFunctionToEigenvalues) {
    const oracle::Mat a = oracle::random_hpd(4, 3);
    const HermitianMatrix h = HermitianMatrix::hermitian_part(a);
    const HermitianMatrix inv = spectral_map(eig_hermitian(h), [](double c) { return 1.0 / c; });
    EXPECT_LE((inv.dense() * a - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
}

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ppspec {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// p x p complex Hermitian matrix.
///
/// Only the upper triangle (diagonal included) is stored, so conjugate
/// symmetry holds exactly for every value of this type. Diagonal entries are
/// real. Instances are immutable once built.
class HermitianMatrix {
public:
    HermitianMatrix() = default;

    /// Zero matrix of dimension p.
    explicit HermitianMatrix(std::size_t p);

    static HermitianMatrix identity(std::size_t p);
    static HermitianMatrix diagonal(std::span<const double> values);

    /// Ingests a dense matrix, rejecting it unless it is Hermitian to within
    /// `rel_tol` relative to its largest entry. Non-finite entries are rejected.
    static HermitianMatrix from_dense(const ComplexMatrix& a, double rel_tol = 1e-12);

    /// Hermitian part (A + A^H)/2 of a dense matrix, no symmetry check.
    /// Used for results of numerical routines that are Hermitian in exact
    /// arithmetic. Non-finite entries are still rejected.
    static HermitianMatrix hermitian_part(const ComplexMatrix& a);

    /// Builds from packed row-major upper-triangle storage (size p(p+1)/2).
    /// Imaginary parts of diagonal entries must be exactly zero.
    static HermitianMatrix from_packed(std::size_t p, std::vector<Complex> upper);

    [[nodiscard]] std::size_t dim() const noexcept { return p_; }

    /// Entry (q, r); conjugated lookup below the diagonal.
    [[nodiscard]] Complex operator()(std::size_t q, std::size_t r) const;

    [[nodiscard]] double diag(std::size_t q) const { return upper_[index(q, q)].real(); }

    [[nodiscard]] ComplexMatrix dense() const;

    [[nodiscard]] std::span<const Complex> packed() const noexcept { return upper_; }

    [[nodiscard]] double trace() const;

    [[nodiscard]] HermitianMatrix scaled(double t) const;

    friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

private:
    HermitianMatrix(std::size_t p, std::vector<Complex> upper) : p_(p), upper_(std::move(upper)) {}

    [[nodiscard]] std::size_t index(std::size_t q, std::size_t r) const noexcept {
        return q * (2 * p_ - q + 1) / 2 + (r - q);
    }

    std::size_t p_ = 0;
    std::vector<Complex> upper_;
};

struct EigenDecomposition {
    RealVector values;     // ascending
    ComplexMatrix vectors; // columns are orthonormal eigenvectors
};

[[nodiscard]] EigenDecomposition eig_hermitian(const HermitianMatrix& h);

/// Sum of log eigenvalues; throws NotPositiveDefinite if any eigenvalue <= 0.
[[nodiscard]] double log_det_pd(const HermitianMatrix& h);

enum class NormKind { frobenius, elementwise_max, row_sum_max };

[[nodiscard]] double matrix_norm(const HermitianMatrix& h, NormKind kind);
[[nodiscard]] double matrix_norm(const ComplexMatrix& a, NormKind kind);

/// Ratio of extreme eigenvalues. Returns +infinity when the smallest
/// eigenvalue is numerically zero or negative, i.e. at or below
/// max(1e-300, p * machine epsilon * largest eigenvalue).
[[nodiscard]] double condition_number(const HermitianMatrix& h);

[[nodiscard]] double min_eigenvalue(const HermitianMatrix& h);

/// Inverse of a positive definite matrix (Cholesky). Throws NotPositiveDefinite.
[[nodiscard]] HermitianMatrix inverse_pd(const HermitianMatrix& h);

/// Q diag(f(c)) Q^H for a function applied to the eigenvalues.
template <typename F>
[[nodiscard]] HermitianMatrix spectral_map(const EigenDecomposition& eig, F&& f) {
    RealVector mapped(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        mapped[i] = f(eig.values[i]);
    }
    return HermitianMatrix::hermitian_part(eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint());
}

} // namespace ppspec

#include "ppspec/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ppspec/errors.hpp"

namespace ppspec {

namespace {

bool finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void require_finite(const ComplexMatrix& a, const char* what) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (!finite(a(i, j))) {
                throw InvalidArgument(std::string(what) + ": non-finite entry");
            }
        }
    }
}

void require_square(const ComplexMatrix& a, const char* what) {
    if (a.rows() != a.cols()) {
        throw ShapeMismatch(std::string(what) + ": matrix is not square");
    }
}

} // namespace

HermitianMatrix::HermitianMatrix(std::size_t p) : p_(p), upper_(p * (p + 1) / 2, Complex{}) {}

HermitianMatrix HermitianMatrix::identity(std::size_t p) {
    HermitianMatrix h(p);
    for (std::size_t q = 0; q < p; ++q) {
        h.upper_[h.index(q, q)] = 1.0;
    }
    return h;
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
    HermitianMatrix h(values.size());
    for (std::size_t q = 0; q < values.size(); ++q) {
        if (!std::isfinite(values[q])) {
            throw InvalidArgument("HermitianMatrix::diagonal: non-finite entry");
        }
        h.upper_[h.index(q, q)] = values[q];
    }
    return h;
}

HermitianMatrix HermitianMatrix::from_dense(const ComplexMatrix& a, double rel_tol) {
    require_square(a, "HermitianMatrix::from_dense");
    require_finite(a, "HermitianMatrix::from_dense");
    const double scale = a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
    const double tol = rel_tol * scale;
    const auto p = static_cast<std::size_t>(a.rows());
    for (std::size_t q = 0; q < p; ++q) {
        const auto qi = static_cast<Eigen::Index>(q);
        if (std::abs(a(qi, qi).imag()) > tol) {
            throw InvalidArgument("HermitianMatrix::from_dense: diagonal entry is not real");
        }
        for (std::size_t r = q + 1; r < p; ++r) {
            const auto ri = static_cast<Eigen::Index>(r);
            if (std::abs(a(qi, ri) - std::conj(a(ri, qi))) > tol) {
                throw InvalidArgument("HermitianMatrix::from_dense: matrix is not Hermitian");
            }
        }
    }
    return hermitian_part(a);
}

HermitianMatrix HermitianMatrix::hermitian_part(const ComplexMatrix& a) {
    require_square(a, "HermitianMatrix::hermitian_part");
    require_finite(a, "HermitianMatrix::hermitian_part");
    const auto p = static_cast<std::size_t>(a.rows());
    HermitianMatrix h(p);
    for (std::size_t q = 0; q < p; ++q) {
        const auto qi = static_cast<Eigen::Index>(q);
        h.upper_[h.index(q, q)] = a(qi, qi).real();
        for (std::size_t r = q + 1; r < p; ++r) {
            const auto ri = static_cast<Eigen::Index>(r);
            h.upper_[h.index(q, r)] = 0.5 * (a(qi, ri) + std::conj(a(ri, qi)));
        }
    }
    return h;
}

HermitianMatrix HermitianMatrix::from_packed(std::size_t p, std::vector<Complex> upper) {
    if (upper.size() != p * (p + 1) / 2) {
        throw ShapeMismatch("HermitianMatrix::from_packed: expected " +
                            std::to_string(p * (p + 1) / 2) + " entries");
    }
    HermitianMatrix h(p, std::move(upper));
    for (const auto& z : h.upper_) {
        if (!finite(z)) {
            throw InvalidArgument("HermitianMatrix::from_packed: non-finite entry");
        }
    }
    for (std::size_t q = 0; q < p; ++q) {
        if (h.upper_[h.index(q, q)].imag() != 0.0) {
            throw InvalidArgument("HermitianMatrix::from_packed: diagonal entry is not real");
        }
    }
    return h;
}

Complex HermitianMatrix::operator()(std::size_t q, std::size_t r) const {
    return q <= r ? upper_[index(q, r)] : std::conj(upper_[index(r, q)]);
}

ComplexMatrix HermitianMatrix::dense() const {
    const auto n = static_cast<Eigen::Index>(p_);
    ComplexMatrix a(n, n);
    for (std::size_t q = 0; q < p_; ++q) {
        for (std::size_t r = q; r < p_; ++r) {
            const Complex v = upper_[index(q, r)];
            a(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(r)) = v;
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(q)) = std::conj(v);
        }
    }
    return a;
}

double HermitianMatrix::trace() const {
    double t = 0.0;
    for (std::size_t q = 0; q < p_; ++q) {
        t += diag(q);
    }
    return t;
}

HermitianMatrix HermitianMatrix::scaled(double t) const {
    std::vector<Complex> out(upper_);
    for (auto& z : out) {
        z *= t;
    }
    return from_packed(p_, std::move(out));
}

EigenDecomposition eig_hermitian(const HermitianMatrix& h) {
    if (h.dim() == 0) {
        return {};
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.dense());
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eig_hermitian: eigen-solver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const HermitianMatrix& h) {
    if (h.dim() == 0) {
        throw EmptyInput("min_eigenvalue: empty matrix");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.dense(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues()[0];
}

double log_det_pd(const HermitianMatrix& h) {
    if (h.dim() == 0) {
        return 0.0;
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.dense(), Eigen::EigenvaluesOnly);
    const RealVector& c = solver.eigenvalues();
    if (!(c[0] > 0.0)) {
        throw NotPositiveDefinite("log_det_pd: minimum eigenvalue " + std::to_string(c[0]) +
                                  " is not positive");
    }
    return c.array().log().sum();
}

double matrix_norm(const ComplexMatrix& a, NormKind kind) {
    if (a.size() == 0) {
        return 0.0;
    }
    switch (kind) {
    case NormKind::frobenius:
        return a.norm();
    case NormKind::elementwise_max:
        return a.cwiseAbs().maxCoeff();
    case NormKind::row_sum_max:
        return a.cwiseAbs().rowwise().sum().maxCoeff();
    }
    return 0.0;
}

double matrix_norm(const HermitianMatrix& h, NormKind kind) {
    return matrix_norm(h.dense(), kind);
}

double condition_number(const HermitianMatrix& h) {
    if (h.dim() == 0) {
        throw EmptyInput("condition_number: empty matrix");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.dense(), Eigen::EigenvaluesOnly);
    const RealVector& c = solver.eigenvalues();
    const double largest = c[c.size() - 1];
    const double cutoff = std::max(
        1e-300, static_cast<double>(h.dim()) * std::numeric_limits<double>::epsilon() * largest);
    if (c[0] <= cutoff) {
        return std::numeric_limits<double>::infinity();
    }
    return largest / c[0];
}

HermitianMatrix inverse_pd(const HermitianMatrix& h) {
    const ComplexMatrix a = h.dense();
    Eigen::LLT<ComplexMatrix> llt(a);
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite("inverse_pd: Cholesky factorisation failed");
    }
    const auto n = a.rows();
    return HermitianMatrix::hermitian_part(llt.solve(ComplexMatrix::Identity(n, n)));
}

} // namespace ppspec

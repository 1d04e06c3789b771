#include "ppspec/rse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppspec/errors.hpp"

namespace ppspec {

Penalty parse_penalty(std::string_view name) {
    if (name == "ridge") return Penalty::ridge;
    if (name == "lasso") return Penalty::lasso;
    throw InvalidArgument("unknown penalty '" + std::string(name) + "' (expected ridge or lasso)");
}

std::string_view penalty_name(Penalty p) {
    return p == Penalty::ridge ? "ridge" : "lasso";
}

double whittle_nll(const HermitianMatrix& theta, const HermitianMatrix& s_hat) {
    if (theta.dim() != s_hat.dim()) {
        throw ShapeMismatch("whittle_nll: dimension mismatch");
    }
    const double log_det = log_det_pd(theta);
    const Complex tr = (s_hat.dense() * theta.dense()).trace();
    const double scale = std::max(1.0, std::abs(tr.real()));
    if (std::abs(tr.imag()) > 1e-10 * scale) {
        throw NumericalError("whittle_nll: trace has a non-negligible imaginary part");
    }
    return -log_det + tr.real();
}

double whittle_nll(const HermitianMatrix& theta, const SpectralMatrix& s_hat) {
    return whittle_nll(theta, s_hat.matrix);
}

double penalty_value(const HermitianMatrix& theta, Penalty kind, bool include_diagonal) {
    if (kind == Penalty::ridge) {
        return theta.trace();
    }
    double sum = 0.0;
    const std::size_t p = theta.dim();
    for (std::size_t q = 0; q < p; ++q) {
        if (include_diagonal) {
            sum += std::abs(theta.diag(q));
        }
        for (std::size_t r = q + 1; r < p; ++r) {
            sum += 2.0 * std::abs(theta(q, r));
        }
    }
    return sum;
}

RSEResult ridge_estimate(const SpectralMatrix& s_hat, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidArgument("ridge_estimate: lambda must be positive");
    }
    const auto p = static_cast<Eigen::Index>(s_hat.dim());
    const ComplexMatrix a = s_hat.matrix.dense() + lambda * ComplexMatrix::Identity(p, p);
    // Eigen route: (S + lambda I) has eigenvalues >= lambda, so the inverse is PD.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
    const RealVector inv = solver.eigenvalues().cwiseInverse();
    const ComplexMatrix theta =
        solver.eigenvectors() * inv.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
    RSEResult result;
    result.theta = HermitianMatrix::hermitian_part(theta);
    result.lambda = lambda;
    result.iterations = 1;
    result.converged = true;
    result.primal_residual =
        (a * result.theta.dense() - ComplexMatrix::Identity(p, p)).cwiseAbs().maxCoeff();
    return result;
}

Complex block_soft_threshold(Complex w, double kappa) {
    const double mod = std::abs(w);
    if (mod <= kappa || mod == 0.0) {
        return Complex{};
    }
    return (1.0 - kappa / mod) * w;
}

double admm_eigen_map(double c, double tau) {
    return (c + std::sqrt(c * c + 4.0 * tau)) / (2.0 * tau);
}

namespace {

void validate(const RSEConfig& config) {
    if (!(config.lambda > 0.0) || !std::isfinite(config.lambda)) {
        throw InvalidArgument("lasso_admm: lambda must be positive");
    }
    if (!(config.admm_tau > 0.0) || !(config.eps_abs > 0.0) || !(config.eps_rel > 0.0)) {
        throw InvalidArgument("lasso_admm: tau and tolerances must be positive");
    }
    if (config.max_iter == 0) {
        throw InvalidArgument("lasso_admm: max_iter must be at least 1");
    }
}

} // namespace

RSEResult lasso_admm(const SpectralMatrix& s_hat, const RSEConfig& config,
                     const std::optional<HermitianMatrix>& warm_start) {
    validate(config);
    const auto p = static_cast<Eigen::Index>(s_hat.dim());
    if (p == 0) {
        throw EmptyInput("lasso_admm: empty spectral matrix");
    }
    const double lambda = config.lambda;
    const double tau = config.admm_tau;
    const double kappa = lambda / tau;
    const ComplexMatrix s = s_hat.matrix.dense();

    ComplexMatrix z;
    if (warm_start && static_cast<Eigen::Index>(warm_start->dim()) == p) {
        z = warm_start->dense();
    } else {
        z = ComplexMatrix::Zero(p, p);
        for (Eigen::Index q = 0; q < p; ++q) {
            z(q, q) = 1.0 / (s(q, q).real() + lambda);
        }
    }
    ComplexMatrix u = ComplexMatrix::Zero(p, p);
    ComplexMatrix theta = z;
    ComplexMatrix z_prev(p, p);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(p);
    RealVector mapped(p);

    RSEResult result;
    result.lambda = lambda;
    const double sqrt_p2 = static_cast<double>(p);
    for (std::size_t it = 1; it <= config.max_iter; ++it) {
        solver.compute(tau * (z - u) - s);
        for (Eigen::Index i = 0; i < p; ++i) {
            mapped[i] = admm_eigen_map(solver.eigenvalues()[i], tau);
        }
        theta.noalias() = solver.eigenvectors() * mapped.cast<Complex>().asDiagonal() *
                          solver.eigenvectors().adjoint();

        z_prev = z;
        // Z from the Hermitian part of Theta + U, computed on the upper triangle
        // and mirrored so the iterate stays exactly Hermitian.
        for (Eigen::Index q = 0; q < p; ++q) {
            const double wqq = theta(q, q).real() + u(q, q).real();
            z(q, q) = config.penalize_diagonal ? block_soft_threshold(wqq, kappa).real() : wqq;
            for (Eigen::Index r = q + 1; r < p; ++r) {
                const Complex w = 0.5 * (theta(q, r) + std::conj(theta(r, q))) +
                                  0.5 * (u(q, r) + std::conj(u(r, q)));
                const Complex v = block_soft_threshold(w, kappa);
                z(q, r) = v;
                z(r, q) = std::conj(v);
            }
        }
        u += theta - z;

        const double primal = (theta - z).norm();
        const double dual = tau * (z - z_prev).norm();
        const double eps_pri = sqrt_p2 * config.eps_abs + config.eps_rel * std::max(theta.norm(), z.norm());
        const double eps_dual = sqrt_p2 * config.eps_abs + config.eps_rel * tau * u.norm();
        result.primal_history.push_back(primal);
        result.dual_history.push_back(dual);
        result.iterations = it;
        result.primal_residual = primal;
        result.dual_residual = dual;
        if (primal <= eps_pri && dual <= eps_dual) {
            result.converged = true;
            break;
        }
    }

    HermitianMatrix estimate = HermitianMatrix::hermitian_part(z);
    Eigen::LLT<ComplexMatrix> llt(estimate.dense());
    if (llt.info() != Eigen::Success) {
        // Z lost definiteness (only possible far from convergence); fall back to
        // the Theta iterate, which is PD by construction.
        estimate = HermitianMatrix::hermitian_part(theta);
        result.converged = false;
    }
    result.theta = std::move(estimate);
    result.kkt_residual = kkt_residual(result.theta, s_hat.matrix, lambda, config.penalize_diagonal);
    return result;
}

RSEResult estimate(const SpectralMatrix& s_hat, const RSEConfig& config) {
    return config.penalty == Penalty::ridge ? ridge_estimate(s_hat, config.lambda)
                                            : lasso_admm(s_hat, config);
}

double kkt_residual(const HermitianMatrix& theta, const HermitianMatrix& s_hat, double lambda,
                    bool penalize_diagonal) {
    const ComplexMatrix inv = inverse_pd(theta).dense();
    const ComplexMatrix s = s_hat.dense();
    const std::size_t p = theta.dim();
    double worst = 0.0;
    for (std::size_t q = 0; q < p; ++q) {
        for (std::size_t r = q; r < p; ++r) {
            const auto qi = static_cast<Eigen::Index>(q);
            const auto ri = static_cast<Eigen::Index>(r);
            const Complex residual = inv(qi, ri) - s(qi, ri); // should equal lambda * Zhat
            Complex zhat{};
            if (q != r || penalize_diagonal) {
                const Complex t = theta(q, r);
                if (t != Complex{}) {
                    zhat = t / std::abs(t);
                } else {
                    zhat = residual / lambda;
                    const double mod = std::abs(zhat);
                    if (mod > 1.0) {
                        zhat /= mod;
                    }
                }
            }
            worst = std::max(worst, std::abs(lambda * zhat - residual));
        }
    }
    return worst;
}

double partial_coherence(const HermitianMatrix& theta, std::size_t q, std::size_t r) {
    const double tqq = theta.diag(q);
    const double trr = theta.diag(r);
    if (!(tqq > 0.0) || !(trr > 0.0)) {
        throw NotPositiveDefinite("partial_coherence: non-positive diagonal entry");
    }
    return std::clamp(std::norm(theta(q, r)) / (tqq * trr), 0.0, 1.0);
}

EdgeSet support(const HermitianMatrix& theta, double zero_tol) {
    EdgeSet edges;
    for (std::size_t q = 0; q < theta.dim(); ++q) {
        for (std::size_t r = q + 1; r < theta.dim(); ++r) {
            if (std::abs(theta(q, r)) > zero_tol) {
                edges.emplace(q, r);
            }
        }
    }
    return edges;
}

EdgeSet PartialCoherenceGraph::edge_set() const {
    EdgeSet out;
    for (const auto& e : edges) {
        out.emplace(e.q, e.r);
    }
    return out;
}

PartialCoherenceGraph extract_graph(const HermitianMatrix& theta, double zero_tol, double omega,
                                    std::optional<Band> band) {
    PartialCoherenceGraph g{omega, std::move(band), theta.dim(), {}};
    for (const auto& [q, r] : support(theta, zero_tol)) {
        g.edges.push_back({q, r, partial_coherence(theta, q, r)});
    }
    return g;
}

PartialCoherenceGraph extract_graph(const RSEResult& result, double zero_tol, double omega,
                                    std::optional<Band> band) {
    return extract_graph(result.theta, zero_tol, omega, std::move(band));
}

} // namespace ppspec

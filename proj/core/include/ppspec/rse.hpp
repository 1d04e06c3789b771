#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "ppspec/hermitian.hpp"
#include "ppspec/spectral_matrix.hpp"

namespace ppspec {

enum class Penalty { ridge, lasso };

[[nodiscard]] Penalty parse_penalty(std::string_view name);
[[nodiscard]] std::string_view penalty_name(Penalty p);

struct RSEConfig {
    Penalty penalty = Penalty::lasso;
    double lambda = 0.1;
    double admm_tau = 1.0;
    double eps_abs = 1e-6;
    double eps_rel = 1e-4;
    std::size_t max_iter = 5000;
    bool penalize_diagonal = true;
};

struct RSEResult {
    HermitianMatrix theta; // inverse-spectrum estimate
    double lambda = 0.0;
    std::size_t iterations = 0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    bool converged = false;
    double kkt_residual = 0.0;
    std::vector<double> primal_history; // per iteration, ADMM only
    std::vector<double> dual_history;
};

/// Whittle negative log-likelihood -log det(Theta) + Re Tr(S_hat Theta).
[[nodiscard]] double whittle_nll(const HermitianMatrix& theta, const HermitianMatrix& s_hat);
[[nodiscard]] double whittle_nll(const HermitianMatrix& theta, const SpectralMatrix& s_hat);

/// lasso: sum over all (q, r) of |Theta_qr| (diagonal included unless
/// `include_diagonal` is false); ridge: Tr(Theta).
[[nodiscard]] double penalty_value(const HermitianMatrix& theta, Penalty kind,
                                   bool include_diagonal = true);

/// Closed-form ridge solution (S_hat + lambda I)^{-1}.
[[nodiscard]] RSEResult ridge_estimate(const SpectralMatrix& s_hat, double lambda);

/// (1 - kappa/|w|)_+ w, with S(0) = 0.
[[nodiscard]] Complex block_soft_threshold(Complex w, double kappa);

/// Theta-update eigenvalue map (c + sqrt(c^2 + 4 tau)) / (2 tau).
[[nodiscard]] double admm_eigen_map(double c, double tau);

/// Group-lasso penalised Whittle estimate by scaled ADMM. The returned theta
/// is the sparse Z iterate. No warm start unless `warm_start` is given.
[[nodiscard]] RSEResult lasso_admm(const SpectralMatrix& s_hat, const RSEConfig& config,
                                   const std::optional<HermitianMatrix>& warm_start = std::nullopt);

/// Dispatches on config.penalty.
[[nodiscard]] RSEResult estimate(const SpectralMatrix& s_hat, const RSEConfig& config);

/// max |S_hat - Theta^{-1} + lambda Zhat| with the subgradient Zhat
/// reconstructed from theta: Theta_qr/|Theta_qr| on the support, else the
/// clipped residual (Theta^{-1} - S_hat)_qr / lambda.
[[nodiscard]] double kkt_residual(const HermitianMatrix& theta, const HermitianMatrix& s_hat,
                                  double lambda, bool penalize_diagonal = true);

/// |Theta_qr|^2 / (Theta_qq Theta_rr), clipped to [0, 1].
[[nodiscard]] double partial_coherence(const HermitianMatrix& theta, std::size_t q, std::size_t r);

struct GraphEdge {
    std::size_t q;
    std::size_t r;
    double pc;

    friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct PartialCoherenceGraph {
    double omega = 0.0;
    std::optional<Band> band;
    std::size_t p = 0;
    std::vector<GraphEdge> edges; // q < r, ordered

    [[nodiscard]] EdgeSet edge_set() const;
};

/// Edge (q, r) iff |Theta_qr| > zero_tol, weighted by partial coherence.
[[nodiscard]] PartialCoherenceGraph extract_graph(const HermitianMatrix& theta, double zero_tol = 0.0,
                                                  double omega = 0.0,
                                                  std::optional<Band> band = std::nullopt);
[[nodiscard]] PartialCoherenceGraph extract_graph(const RSEResult& result, double zero_tol = 0.0,
                                                  double omega = 0.0,
                                                  std::optional<Band> band = std::nullopt);

/// Support of theta's strict upper triangle.
[[nodiscard]] EdgeSet support(const HermitianMatrix& theta, double zero_tol = 0.0);

} // namespace ppspec

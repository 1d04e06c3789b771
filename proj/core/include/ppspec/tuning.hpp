#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ppspec/hermitian.hpp"
#include "ppspec/rse.hpp"
#include "ppspec/spectral_matrix.hpp"

namespace ppspec {

/// (2 / (p (p-1))) sum_{q<r} |est_qr - truth_qr|^2 for one replicate.
[[nodiscard]] double mse(const HermitianMatrix& est, const HermitianMatrix& truth);

struct ClassificationScores {
    double f1 = 0.0;
    double tpr = 0.0;
    double fpr = 0.0;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
};

/// F1 = TP / (TP + (FP + FN)/2), TPR = TP/|true|, FPR = FP/(#pairs - |true|).
/// Empty denominators: F1 = 1 and TPR = 1 when both sets are empty, TPR = 1
/// when there are no true edges, FPR = 0 when every pair is a true edge.
[[nodiscard]] ClassificationScores classification_scores(const EdgeSet& estimated,
                                                         const EdgeSet& truth, std::size_t p);

enum class Criterion { mse, f1 };

[[nodiscard]] Criterion parse_criterion(std::string_view name);
[[nodiscard]] std::string_view criterion_name(Criterion c);

/// n log-spaced points from lo to hi inclusive (ascending).
[[nodiscard]] std::vector<double> log_spaced(double lo, double hi, std::size_t n);

/// 20 (by default) log-spaced points over [1e-3, 10] * scale, scale being
/// the largest auto-spectrum.
[[nodiscard]] std::vector<double> default_lambda_grid(double scale, std::size_t n = 20);

struct TuningTruth {
    HermitianMatrix theta;
    EdgeSet edges;
};

struct GridSelection {
    Criterion criterion = Criterion::mse;
    Penalty penalty = Penalty::lasso;
    std::vector<double> lambdas;             // ascending
    std::vector<std::vector<double>> scores; // [replicate][lambda]
    std::vector<double> replicate_optima;
    double lambda_star = 0.0;
};

/// Per-replicate optimum over the grid (min MSE or max F1, ties to the
/// smaller lambda), then lambda* = arithmetic mean of the optima.
/// `base` supplies the penalty and solver settings.
[[nodiscard]] GridSelection grid_select(std::span<const SpectralMatrix> training,
                                        std::span<const double> lambda_grid, Criterion criterion,
                                        const TuningTruth& truth, const RSEConfig& base);

/// Number of nonzero upper-triangle entries (diagonal optional).
[[nodiscard]] std::size_t degrees_of_freedom(const HermitianMatrix& theta, bool count_diagonal = true);

/// 2 m_eff L(Theta) + df log(m_eff) + 4 gamma df log(p).
[[nodiscard]] double ebic(const RSEResult& result, const SpectralMatrix& s_hat, double m_eff,
                          std::size_t p, double gamma = 0.5, bool count_diagonal = true);

struct EbicPath {
    std::vector<double> lambdas; // ascending
    std::vector<double> scores;
    std::vector<std::size_t> df;
    std::vector<RSEResult> results;
    std::size_t selected = 0; // argmin, ties to the larger lambda

    [[nodiscard]] const RSEResult& best() const { return results.at(selected); }
};

/// Solves the lasso along the grid (warm-started from the largest lambda)
/// and scores every solution by eBIC.
[[nodiscard]] EbicPath select_ebic(const SpectralMatrix& s_hat, std::span<const double> lambda_grid,
                                   const RSEConfig& base, double gamma = 0.5,
                                   bool count_diagonal = true);

/// Index of the minimum, ties resolved towards the larger lambda (later index).
[[nodiscard]] std::size_t argmin_prefer_larger(std::span<const double> scores);

} // namespace ppspec

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ppspec/hawkes.hpp"
#include "ppspec/rse.hpp"
#include "ppspec/tuning.hpp"

namespace ppspec {

enum class Estimator { inverted_periodogram, ridge, lasso_mse, lasso_f1 };

[[nodiscard]] std::string_view estimator_name(Estimator e);
[[nodiscard]] Estimator parse_estimator(std::string_view name);

struct Table1Config {
    Scenario scenario = Scenario::a;
    std::size_t p = 12;
    std::size_t m = 50;
    double trial_length = 200.0; // seconds per trial; total horizon is m * trial_length
    std::size_t replicates = 20;
    std::size_t training = 5;
    double omega = 0.0628;
    std::vector<double> lambda_grid; // empty: default grid from the training periodograms
    std::size_t grid_size = 20;
    std::vector<Estimator> estimators{Estimator::inverted_periodogram, Estimator::ridge,
                                      Estimator::lasso_mse, Estimator::lasso_f1};
    std::uint64_t seed = 1;
    RSEConfig solver{};
    bool allow_large_p = false; // p > 48 is opt-in

    [[nodiscard]] double horizon() const { return trial_length * static_cast<double>(m); }
};

struct EstimatorSummary {
    Estimator estimator = Estimator::ridge;
    double lambda = 0.0; // 0 for the inverted periodogram
    std::size_t completed = 0;
    std::size_t failures = 0;
    std::vector<double> mse;       // per completed replicate
    std::vector<double> frobenius; // ||Theta_hat - Theta*||_F per completed replicate
    std::vector<ClassificationScores> scores;
    std::size_t offblock_exact_zero = 0; // replicates with every off-block entry exactly zero
    std::size_t unconverged = 0;

    [[nodiscard]] double mse_mean() const;
    [[nodiscard]] double mse_se() const;
    [[nodiscard]] double frobenius_median() const;
    [[nodiscard]] double f1_mean() const;
    [[nodiscard]] double f1_se() const;
    [[nodiscard]] double tpr_mean() const;
    [[nodiscard]] double fpr_mean() const;
};

struct MonteCarloReport {
    Table1Config config;
    double omega_requested = 0.0;
    double omega_evaluated = 0.0;
    std::size_t fourier_index = 0;
    std::size_t true_edges = 0;
    std::vector<double> lambda_grid;
    std::vector<GridSelection> selections;
    std::vector<EstimatorSummary> estimators;
    double wall_clock_s = 0.0;

    [[nodiscard]] const EstimatorSummary& summary(Estimator e) const;
};

[[nodiscard]] MonteCarloReport run_table1(const Table1Config& config);

struct Figure1Config {
    std::size_t m = 10;
    double horizon = 1000.0;
    double rate = 1.0;
    double omega = 0.0628;
    std::size_t coherence_p = 7;
    std::size_t coherence_replicates = 1000;
    std::vector<std::size_t> dims{2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 16, 18, 20};
    std::size_t replicates = 200;
    std::size_t density_points = 101;
    std::uint64_t seed = 1;
};

struct BandStat {
    double median = 0.0;
    double lo = 0.0; // 2.5% quantile
    double hi = 0.0; // 97.5% quantile
};

struct Figure1Report {
    Figure1Config config;
    double omega_evaluated = 0.0;
    std::vector<double> coherence;                          // R^2_01 per replicate
    std::vector<std::pair<double, double>> density_overlay; // Goodman density, R2 = 0
    std::vector<std::size_t> dims;
    std::vector<BandStat> linf_error;
    std::vector<BandStat> condition;
};

[[nodiscard]] Figure1Report run_figure1(const Figure1Config& config);

/// Quantile by linear interpolation between order statistics.
[[nodiscard]] double quantile(std::vector<double> values, double prob);

[[nodiscard]] double mean(const std::vector<double>& values);
/// Sample standard deviation / sqrt(n); zero for n < 2.
[[nodiscard]] double standard_error(const std::vector<double>& values);

} // namespace ppspec

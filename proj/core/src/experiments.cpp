#include "ppspec/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "ppspec/errors.hpp"
#include "ppspec/parallel.hpp"
#include "ppspec/periodogram.hpp"
#include "ppspec/random.hpp"
#include "ppspec/taper.hpp"

namespace ppspec {

std::string_view estimator_name(Estimator e) {
    switch (e) {
    case Estimator::inverted_periodogram: return "inverted_periodogram";
    case Estimator::ridge: return "ridge";
    case Estimator::lasso_mse: return "lasso_mse";
    case Estimator::lasso_f1: return "lasso_f1";
    }
    return "unknown";
}

Estimator parse_estimator(std::string_view name) {
    for (Estimator e : {Estimator::inverted_periodogram, Estimator::ridge, Estimator::lasso_mse,
                        Estimator::lasso_f1}) {
        if (name == estimator_name(e)) {
            return e;
        }
    }
    throw InvalidArgument("unknown estimator '" + std::string(name) + "'");
}

double mean(const std::vector<double>& values) {
    if (values.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double standard_error(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) {
        return 0.0;
    }
    const double mu = mean(values);
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mu) * (v - mu);
    }
    return std::sqrt(ss / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
}

double quantile(std::vector<double> values, double prob) {
    if (values.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    std::sort(values.begin(), values.end());
    const double h = prob * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = h - static_cast<double>(lo);
    if (frac == 0.0 || values[lo] == values[hi]) {
        return values[lo];
    }
    return values[lo] + frac * (values[hi] - values[lo]);
}

namespace {

std::vector<double> select(const std::vector<ClassificationScores>& s, double ClassificationScores::*field) {
    std::vector<double> out;
    out.reserve(s.size());
    for (const auto& x : s) {
        out.push_back(x.*field);
    }
    return out;
}

} // namespace

double EstimatorSummary::mse_mean() const { return mean(mse); }
double EstimatorSummary::mse_se() const { return standard_error(mse); }
double EstimatorSummary::frobenius_median() const { return quantile(frobenius, 0.5); }
double EstimatorSummary::f1_mean() const { return mean(select(scores, &ClassificationScores::f1)); }
double EstimatorSummary::f1_se() const { return standard_error(select(scores, &ClassificationScores::f1)); }
double EstimatorSummary::tpr_mean() const { return mean(select(scores, &ClassificationScores::tpr)); }
double EstimatorSummary::fpr_mean() const { return mean(select(scores, &ClassificationScores::fpr)); }

const EstimatorSummary& MonteCarloReport::summary(Estimator e) const {
    for (const auto& s : estimators) {
        if (s.estimator == e) {
            return s;
        }
    }
    throw InvalidArgument("MonteCarloReport: estimator " + std::string(estimator_name(e)) +
                          " was not run");
}

namespace {

constexpr std::uint64_t kTrainingStream = 1'000'000;

struct ReplicateOutcome {
    bool ok = false;
    double mse = 0.0;
    double frobenius = 0.0;
    ClassificationScores scores;
    bool offblock_zero = false;
    bool converged = true;
};

bool offblock_exact_zero(const HermitianMatrix& theta, std::size_t block) {
    for (std::size_t q = 0; q < theta.dim(); ++q) {
        for (std::size_t r = q + 1; r < theta.dim(); ++r) {
            if (q / block != r / block && theta(q, r) != Complex{}) {
                return false;
            }
        }
    }
    return true;
}

ReplicateOutcome score(const HermitianMatrix& theta, const GroundTruth& truth, std::size_t block) {
    ReplicateOutcome out;
    out.ok = true;
    out.mse = mse(theta, truth.theta);
    out.frobenius = (theta.dense() - truth.theta.dense()).norm();
    out.scores = classification_scores(support(theta), truth.edges, theta.dim());
    out.offblock_zero = offblock_exact_zero(theta, block);
    return out;
}

} // namespace

MonteCarloReport run_table1(const Table1Config& config) {
    const auto start = std::chrono::steady_clock::now();
    if (config.replicates == 0 || config.training == 0) {
        throw InvalidArgument("run_table1: replicate and training counts must be positive");
    }
    if (config.m == 0 || !(config.trial_length > 0.0)) {
        throw InvalidArgument("run_table1: trial count and trial length must be positive");
    }
    if (config.p > 48 && !config.allow_large_p) {
        throw InvalidArgument("run_table1: p > 48 requires allow_large_p");
    }
    const HawkesModel model = preset(config.scenario, config.p);
    const std::size_t block = preset_block_size(config.scenario);

    MonteCarloReport report;
    report.config = config;
    report.omega_requested = config.omega;
    report.fourier_index = nearest_fourier_index(config.horizon(), config.m, config.omega);
    report.omega_evaluated = fourier_frequencies(config.horizon(), config.m, report.fourier_index).back();
    const TaperSet taper(config.m, config.horizon());
    const GroundTruth truth = true_inverse_and_edges(model, report.omega_evaluated);
    report.true_edges = truth.edges.size();

    auto replicate_periodogram = [&](std::uint64_t stream) {
        const EventData data = simulate(model, config.horizon(), config.m, derive_seed(config.seed, stream));
        return periodogram(data, taper, report.omega_evaluated);
    };

    std::vector<SpectralMatrix> training(config.training);
    parallel_for(config.training, [&](std::size_t i) {
        training[i] = replicate_periodogram(kTrainingStream + i);
    });

    report.lambda_grid = config.lambda_grid;
    if (report.lambda_grid.empty()) {
        double scale = 0.0;
        for (const auto& s : training) {
            double max_diag = 0.0;
            for (std::size_t q = 0; q < s.dim(); ++q) {
                max_diag = std::max(max_diag, s.matrix.diag(q));
            }
            scale += max_diag;
        }
        scale /= static_cast<double>(training.size());
        report.lambda_grid = default_lambda_grid(scale, config.grid_size);
    }

    const TuningTruth tuning_truth{truth.theta, truth.edges};
    auto tuned_lambda = [&](Penalty penalty, Criterion criterion) {
        RSEConfig base = config.solver;
        base.penalty = penalty;
        report.selections.push_back(grid_select(training, report.lambda_grid, criterion, tuning_truth, base));
        return report.selections.back().lambda_star;
    };

    for (Estimator e : config.estimators) {
        EstimatorSummary s;
        s.estimator = e;
        switch (e) {
        case Estimator::inverted_periodogram: break;
        case Estimator::ridge: s.lambda = tuned_lambda(Penalty::ridge, Criterion::mse); break;
        case Estimator::lasso_mse: s.lambda = tuned_lambda(Penalty::lasso, Criterion::mse); break;
        case Estimator::lasso_f1: s.lambda = tuned_lambda(Penalty::lasso, Criterion::f1); break;
        }
        report.estimators.push_back(std::move(s));
    }

    // outcomes[replicate][estimator]
    std::vector<std::vector<ReplicateOutcome>> outcomes(
        config.replicates, std::vector<ReplicateOutcome>(report.estimators.size()));
    parallel_for(config.replicates, [&](std::size_t n) {
        const SpectralMatrix s_hat = replicate_periodogram(n);
        for (std::size_t j = 0; j < report.estimators.size(); ++j) {
            const EstimatorSummary& est = report.estimators[j];
            ReplicateOutcome& out = outcomes[n][j];
            switch (est.estimator) {
            case Estimator::inverted_periodogram: {
                // A periodogram from m tapers has rank at most m.
                if (config.p >= config.m || std::isinf(condition_number(s_hat.matrix))) {
                    break;
                }
                try {
                    out = score(inverse_pd(s_hat.matrix), truth, block);
                } catch (const NotPositiveDefinite&) {
                    out.ok = false;
                }
                break;
            }
            case Estimator::ridge:
                out = score(ridge_estimate(s_hat, est.lambda).theta, truth, block);
                break;
            case Estimator::lasso_mse:
            case Estimator::lasso_f1: {
                RSEConfig cfg = config.solver;
                cfg.penalty = Penalty::lasso;
                cfg.lambda = est.lambda;
                const RSEResult r = lasso_admm(s_hat, cfg);
                out = score(r.theta, truth, block);
                out.converged = r.converged;
                break;
            }
            }
        }
    });

    for (std::size_t n = 0; n < config.replicates; ++n) {
        for (std::size_t j = 0; j < report.estimators.size(); ++j) {
            EstimatorSummary& s = report.estimators[j];
            const ReplicateOutcome& out = outcomes[n][j];
            if (!out.ok) {
                ++s.failures;
                continue;
            }
            ++s.completed;
            s.mse.push_back(out.mse);
            s.frobenius.push_back(out.frobenius);
            s.scores.push_back(out.scores);
            s.offblock_exact_zero += out.offblock_zero ? 1 : 0;
            s.unconverged += out.converged ? 0 : 1;
        }
    }
    report.wall_clock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

Figure1Report run_figure1(const Figure1Config& config) {
    if (config.dims.empty() || config.replicates == 0 || config.coherence_replicates == 0) {
        throw InvalidArgument("run_figure1: empty dimension grid or replicate count");
    }
    if (config.coherence_p < 2) {
        throw InvalidArgument("run_figure1: coherence needs at least two channels");
    }
    Figure1Report report;
    report.config = config;
    const std::size_t f = nearest_fourier_index(config.horizon, config.m, config.omega);
    report.omega_evaluated = fourier_frequencies(config.horizon, config.m, f).back();
    const TaperSet taper(config.m, config.horizon);

    // (a) sample coherence between the first two of coherence_p independent streams.
    report.coherence.assign(config.coherence_replicates, 0.0);
    const HawkesModel coherence_model = HawkesModel::poisson(config.coherence_p, config.rate);
    parallel_for(config.coherence_replicates, [&](std::size_t n) {
        const EventData data = simulate(coherence_model, config.horizon, config.m,
                                        derive_seed(config.seed, 2'000'000 + n));
        report.coherence[n] = coherence(periodogram(data, taper, report.omega_evaluated), 0, 1);
    });
    for (std::size_t i = 0; i < config.density_points; ++i) {
        const double x = config.density_points == 1
                             ? 0.0
                             : static_cast<double>(i) / static_cast<double>(config.density_points - 1);
        report.density_overlay.emplace_back(x, goodman_density(x, config.m, 0.0));
    }

    // (b), (c): nested channel subsets of one simulation per replicate.
    report.dims = config.dims;
    const std::size_t p_max = *std::max_element(config.dims.begin(), config.dims.end());
    const HawkesModel model = HawkesModel::poisson(p_max, config.rate);
    const double s_true = config.rate / (2.0 * std::numbers::pi);
    std::vector<std::vector<double>> linf(config.dims.size(), std::vector<double>(config.replicates));
    std::vector<std::vector<double>> cond(config.dims.size(), std::vector<double>(config.replicates));
    parallel_for(config.replicates, [&](std::size_t n) {
        const EventData data =
            simulate(model, config.horizon, config.m, derive_seed(config.seed, 3'000'000 + n));
        for (std::size_t j = 0; j < config.dims.size(); ++j) {
            const EventData sub = data.leading_channels(config.dims[j]);
            const SpectralMatrix s_hat = periodogram(sub, taper, report.omega_evaluated);
            ComplexMatrix err = s_hat.matrix.dense();
            err.diagonal().array() -= s_true;
            linf[j][n] = matrix_norm(err, NormKind::elementwise_max);
            cond[j][n] = condition_number(s_hat.matrix);
        }
    });
    for (std::size_t j = 0; j < config.dims.size(); ++j) {
        report.linf_error.push_back({quantile(linf[j], 0.5), quantile(linf[j], 0.025), quantile(linf[j], 0.975)});
        report.condition.push_back({quantile(cond[j], 0.5), quantile(cond[j], 0.025), quantile(cond[j], 0.975)});
    }
    return report;
}

} // namespace ppspec

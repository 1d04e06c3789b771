#include "ppspec/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ppspec/errors.hpp"
#include "ppspec/parallel.hpp"

namespace ppspec {

double mse(const HermitianMatrix& est, const HermitianMatrix& truth) {
    if (est.dim() != truth.dim()) {
        throw ShapeMismatch("mse: dimension mismatch");
    }
    const std::size_t p = est.dim();
    if (p < 2) {
        return 0.0;
    }
    double sum = 0.0;
    for (std::size_t q = 0; q < p; ++q) {
        for (std::size_t r = q + 1; r < p; ++r) {
            sum += std::norm(est(q, r) - truth(q, r));
        }
    }
    return 2.0 * sum / (static_cast<double>(p) * static_cast<double>(p - 1));
}

ClassificationScores classification_scores(const EdgeSet& estimated, const EdgeSet& truth,
                                           std::size_t p) {
    ClassificationScores s;
    for (const auto& e : estimated) {
        if (truth.contains(e)) {
            ++s.tp;
        } else {
            ++s.fp;
        }
    }
    s.fn = truth.size() - s.tp;
    const double pairs = p < 2 ? 0.0 : static_cast<double>(p) * static_cast<double>(p - 1) / 2.0;
    const double negatives = pairs - static_cast<double>(truth.size());

    const double f1_denom = static_cast<double>(s.tp) + 0.5 * static_cast<double>(s.fp + s.fn);
    s.f1 = f1_denom == 0.0 ? 1.0 : static_cast<double>(s.tp) / f1_denom;
    s.tpr = truth.empty() ? 1.0 : static_cast<double>(s.tp) / static_cast<double>(truth.size());
    s.fpr = negatives <= 0.0 ? 0.0 : static_cast<double>(s.fp) / negatives;
    return s;
}

Criterion parse_criterion(std::string_view name) {
    if (name == "mse") return Criterion::mse;
    if (name == "f1") return Criterion::f1;
    throw InvalidArgument("unknown criterion '" + std::string(name) + "' (expected mse or f1)");
}

std::string_view criterion_name(Criterion c) {
    return c == Criterion::mse ? "mse" : "f1";
}

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi >= lo) || n == 0) {
        throw InvalidArgument("log_spaced: need 0 < lo <= hi and n >= 1");
    }
    if (n == 1) {
        return {lo};
    }
    std::vector<double> out(n);
    const double a = std::log(lo);
    const double b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> default_lambda_grid(double scale, std::size_t n) {
    if (!(scale > 0.0)) {
        throw InvalidArgument("default_lambda_grid: scale must be positive");
    }
    return log_spaced(1e-3 * scale, 10.0 * scale, n);
}

namespace {

std::vector<double> sorted_grid(std::span<const double> grid) {
    if (grid.empty()) {
        throw InvalidArgument("lambda grid is empty");
    }
    std::vector<double> out(grid.begin(), grid.end());
    for (double l : out) {
        if (!(l > 0.0) || !std::isfinite(l)) {
            throw InvalidArgument("lambda grid values must be positive");
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Solves along the grid from the largest lambda down, warm-starting the lasso.
std::vector<RSEResult> solve_path(const SpectralMatrix& s_hat, const std::vector<double>& grid,
                                  const RSEConfig& base) {
    std::vector<RSEResult> out(grid.size());
    std::optional<HermitianMatrix> warm;
    for (std::size_t i = grid.size(); i-- > 0;) {
        RSEConfig cfg = base;
        cfg.lambda = grid[i];
        if (cfg.penalty == Penalty::ridge) {
            out[i] = ridge_estimate(s_hat, cfg.lambda);
        } else {
            out[i] = lasso_admm(s_hat, cfg, warm);
            warm = out[i].theta;
        }
    }
    return out;
}

} // namespace

GridSelection grid_select(std::span<const SpectralMatrix> training, std::span<const double> lambda_grid,
                          Criterion criterion, const TuningTruth& truth, const RSEConfig& base) {
    if (training.empty()) {
        throw InvalidArgument("grid_select: no training replicates");
    }
    GridSelection sel;
    sel.criterion = criterion;
    sel.penalty = base.penalty;
    sel.lambdas = sorted_grid(lambda_grid);
    sel.scores.assign(training.size(), std::vector<double>(sel.lambdas.size()));
    sel.replicate_optima.assign(training.size(), 0.0);

    parallel_for(training.size(), [&](std::size_t n) {
        const auto path = solve_path(training[n], sel.lambdas, base);
        for (std::size_t i = 0; i < path.size(); ++i) {
            sel.scores[n][i] = criterion == Criterion::mse
                                   ? mse(path[i].theta, truth.theta)
                                   : classification_scores(support(path[i].theta), truth.edges,
                                                           truth.theta.dim())
                                         .f1;
        }
        // Strict comparison keeps the first (smallest) lambda among ties.
        std::size_t best = 0;
        for (std::size_t i = 1; i < path.size(); ++i) {
            const bool better = criterion == Criterion::mse ? sel.scores[n][i] < sel.scores[n][best]
                                                            : sel.scores[n][i] > sel.scores[n][best];
            if (better) {
                best = i;
            }
        }
        sel.replicate_optima[n] = sel.lambdas[best];
    });
    sel.lambda_star = std::accumulate(sel.replicate_optima.begin(), sel.replicate_optima.end(), 0.0) /
                      static_cast<double>(sel.replicate_optima.size());
    return sel;
}

std::size_t degrees_of_freedom(const HermitianMatrix& theta, bool count_diagonal) {
    std::size_t df = 0;
    for (std::size_t q = 0; q < theta.dim(); ++q) {
        for (std::size_t r = count_diagonal ? q : q + 1; r < theta.dim(); ++r) {
            if (theta(q, r) != Complex{}) {
                ++df;
            }
        }
    }
    return df;
}

double ebic(const RSEResult& result, const SpectralMatrix& s_hat, double m_eff, std::size_t p,
            double gamma, bool count_diagonal) {
    if (!(m_eff >= 1.0)) {
        throw InvalidArgument("ebic: effective sample size must be at least 1");
    }
    const auto df = static_cast<double>(degrees_of_freedom(result.theta, count_diagonal));
    return 2.0 * m_eff * whittle_nll(result.theta, s_hat) + df * std::log(m_eff) +
           4.0 * gamma * df * std::log(static_cast<double>(p));
}

std::size_t argmin_prefer_larger(std::span<const double> scores) {
    if (scores.empty()) {
        throw InvalidArgument("argmin_prefer_larger: empty input");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
        if (scores[i] <= scores[best]) {
            best = i;
        }
    }
    return best;
}

EbicPath select_ebic(const SpectralMatrix& s_hat, std::span<const double> lambda_grid,
                     const RSEConfig& base, double gamma, bool count_diagonal) {
    EbicPath path;
    path.lambdas = sorted_grid(lambda_grid);
    RSEConfig cfg = base;
    cfg.penalty = Penalty::lasso;
    path.results = solve_path(s_hat, path.lambdas, cfg);
    const auto m_eff = static_cast<double>(s_hat.m_eff);
    for (const auto& r : path.results) {
        path.scores.push_back(ebic(r, s_hat, m_eff, s_hat.dim(), gamma, count_diagonal));
        path.df.push_back(degrees_of_freedom(r.theta, count_diagonal));
    }
    path.selected = argmin_prefer_larger(path.scores);
    return path;
}

} // namespace ppspec

#include "ppspec/hawkes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ppspec/errors.hpp"
#include "ppspec/parallel.hpp"
#include "ppspec/random.hpp"

namespace ppspec {

namespace {

void require_stationary(const HawkesModel& model, const char* where) {
    const double xi = spectral_radius_G0(model);
    if (!(xi < 1.0)) {
        throw NotStationary(std::string(where) + ": spectral radius of G(0) is " +
                            std::to_string(xi) + " (must be < 1)");
    }
}

} // namespace

HawkesModel::HawkesModel(RealVector nu, RealMatrix alpha, RealMatrix beta)
    : nu_(std::move(nu)), alpha_(std::move(alpha)), beta_(std::move(beta)) {
    const auto p = nu_.size();
    if (p == 0) {
        throw InvalidModel("HawkesModel: nu must be non-empty");
    }
    if (alpha_.rows() != p || alpha_.cols() != p || beta_.rows() != p || beta_.cols() != p) {
        throw InvalidModel("HawkesModel: alpha and beta must be " + std::to_string(p) + "x" +
                           std::to_string(p));
    }
    bool any_positive = false;
    for (Eigen::Index q = 0; q < p; ++q) {
        if (!std::isfinite(nu_[q]) || nu_[q] < 0.0) {
            throw InvalidModel("HawkesModel: nu entries must be finite and non-negative");
        }
        any_positive = any_positive || nu_[q] > 0.0;
        for (Eigen::Index r = 0; r < p; ++r) {
            const double a = alpha_(q, r);
            const double b = beta_(q, r);
            if (!std::isfinite(a) || a < 0.0) {
                throw InvalidModel("HawkesModel: alpha entries must be finite and non-negative");
            }
            if (!std::isfinite(b) || b < 0.0 || (a > 0.0 && b <= 0.0)) {
                throw InvalidModel("HawkesModel: beta must be finite, and positive wherever alpha > 0");
            }
        }
    }
    if (!any_positive) {
        throw InvalidModel("HawkesModel: at least one background intensity must be positive");
    }
}

HawkesModel HawkesModel::poisson(std::size_t p, double rate) {
    const auto n = static_cast<Eigen::Index>(p);
    return HawkesModel(RealVector::Constant(n, rate), RealMatrix::Zero(n, n),
                       RealMatrix::Ones(n, n));
}

RealMatrix HawkesModel::branching_matrix() const {
    RealMatrix g = RealMatrix::Zero(alpha_.rows(), alpha_.cols());
    for (Eigen::Index q = 0; q < g.rows(); ++q) {
        for (Eigen::Index r = 0; r < g.cols(); ++r) {
            if (alpha_(q, r) != 0.0) {
                g(q, r) = alpha_(q, r) / beta_(q, r);
            }
        }
    }
    return g;
}

double spectral_radius_G0(const HawkesModel& model) {
    const RealMatrix g = model.branching_matrix();
    if (g.isZero(0.0)) {
        return 0.0;
    }
    Eigen::EigenSolver<RealMatrix> solver(g, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

RealVector stationary_intensity(const HawkesModel& model) {
    require_stationary(model, "stationary_intensity");
    const auto p = static_cast<Eigen::Index>(model.dim());
    const RealMatrix a = RealMatrix::Identity(p, p) - model.branching_matrix();
    RealVector lambda = a.partialPivLu().solve(model.nu());
    for (Eigen::Index q = 0; q < p; ++q) {
        if (!(lambda[q] > 0.0)) {
            throw InvalidModel("stationary_intensity: intensity of channel " + std::to_string(q) +
                               " is not positive");
        }
    }
    return lambda;
}

ComplexMatrix transfer(const HawkesModel& model, double omega) {
    const RealMatrix& alpha = model.alpha();
    const RealMatrix& beta = model.beta();
    ComplexMatrix g = ComplexMatrix::Zero(alpha.rows(), alpha.cols());
    for (Eigen::Index q = 0; q < g.rows(); ++q) {
        for (Eigen::Index r = 0; r < g.cols(); ++r) {
            if (alpha(q, r) != 0.0) {
                g(q, r) = alpha(q, r) / Complex(beta(q, r), omega);
            }
        }
    }
    return g;
}

SpectralMatrix true_spectrum(const HawkesModel& model, double omega) {
    const RealVector lambda = stationary_intensity(model);
    const auto p = static_cast<Eigen::Index>(model.dim());
    const ComplexMatrix i_minus_g = ComplexMatrix::Identity(p, p) - transfer(model, omega);
    const ComplexMatrix a = i_minus_g.partialPivLu().inverse();
    const ComplexMatrix s =
        a * lambda.cast<Complex>().asDiagonal() * a.adjoint() / (2.0 * std::numbers::pi);
    return SpectralMatrix{omega, std::nullopt, HermitianMatrix::hermitian_part(s), 0};
}

GroundTruth true_inverse_and_edges(const HawkesModel& model, double omega, double tol) {
    const RealVector lambda = stationary_intensity(model);
    const auto p = static_cast<Eigen::Index>(model.dim());
    const ComplexMatrix i_minus_g = ComplexMatrix::Identity(p, p) - transfer(model, omega);
    const ComplexMatrix theta = 2.0 * std::numbers::pi * i_minus_g.adjoint() *
                                lambda.cwiseInverse().cast<Complex>().asDiagonal() * i_minus_g;
    GroundTruth truth{HermitianMatrix::hermitian_part(theta), {}, tol};
    if (truth.tolerance < 0.0) {
        double max_diag = 0.0;
        for (std::size_t q = 0; q < model.dim(); ++q) {
            max_diag = std::max(max_diag, truth.theta.diag(q));
        }
        truth.tolerance = 1e-8 * max_diag;
    }
    for (std::size_t q = 0; q < model.dim(); ++q) {
        for (std::size_t r = q + 1; r < model.dim(); ++r) {
            if (std::abs(truth.theta(q, r)) > truth.tolerance) {
                truth.edges.emplace(q, r);
            }
        }
    }
    return truth;
}

namespace {

struct Excitation {
    std::size_t target;
    std::size_t source;
    double jump;
    double decay;
};

EventData::Trial simulate_trial(const HawkesModel& model, const std::vector<Excitation>& links,
                                double length, std::uint64_t seed, std::size_t event_cap) {
    const std::size_t p = model.dim();
    const RealVector& nu = model.nu();
    const double base = nu.sum();
    Rng rng(seed);

    // Excitation state per (target, source) link, and its per-target sum.
    std::vector<double> state(links.size(), 0.0);
    std::vector<double> rate(p);
    std::vector<std::vector<std::size_t>> links_from(p);
    for (std::size_t i = 0; i < links.size(); ++i) {
        links_from[links[i].source].push_back(i);
    }

    EventData::Trial out(p);
    std::size_t produced = 0;
    double t = 0.0;
    double bound = base;
    while (true) {
        const double t_next = t + rng.exponential(bound);
        if (t_next > length) {
            break;
        }
        const double dt = t_next - t;
        t = t_next;
        for (std::size_t q = 0; q < p; ++q) {
            rate[q] = nu[static_cast<Eigen::Index>(q)];
        }
        for (std::size_t i = 0; i < links.size(); ++i) {
            state[i] *= std::exp(-links[i].decay * dt);
            rate[links[i].target] += state[i];
        }
        double total = 0.0;
        for (double r : rate) {
            total += r;
        }
        const double u = rng.uniform() * bound;
        if (u < total) {
            // Accepted: attribute the event to a channel proportionally to its rate.
            std::size_t q = 0;
            double acc = rate[0];
            while (acc <= u && q + 1 < p) {
                acc += rate[++q];
            }
            out[q].push_back(t);
            for (std::size_t i : links_from[q]) {
                state[i] += links[i].jump;
                total += links[i].jump;
            }
            if (++produced > event_cap) {
                throw BudgetExceeded("simulate: event count exceeded the budget");
            }
        }
        // Intensities with exponential kernels do not increase between events.
        bound = total;
    }
    return out;
}

} // namespace

EventData simulate(const HawkesModel& model, double horizon, std::size_t m, std::uint64_t seed,
                   const SimulationOptions& options) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw InvalidArgument("simulate: horizon must be positive");
    }
    if (m == 0) {
        throw InvalidArgument("simulate: at least one trial is required");
    }
    const RealVector lambda = stationary_intensity(model);
    const double expected = lambda.sum() * horizon;
    if (expected > options.event_budget) {
        throw BudgetExceeded("simulate: expected " + std::to_string(expected) +
                             " events exceeds the budget of " +
                             std::to_string(options.event_budget));
    }
    const auto event_cap = static_cast<std::size_t>(options.event_budget);

    std::vector<Excitation> links;
    const auto p = static_cast<Eigen::Index>(model.dim());
    for (Eigen::Index q = 0; q < p; ++q) {
        for (Eigen::Index r = 0; r < p; ++r) {
            if (model.alpha()(q, r) > 0.0) {
                links.push_back({static_cast<std::size_t>(q), static_cast<std::size_t>(r),
                                 model.alpha()(q, r), model.beta()(q, r)});
            }
        }
    }

    const double length = horizon / static_cast<double>(m);
    std::vector<EventData::Trial> trials(m);
    parallel_for(m, [&](std::size_t k) {
        trials[k] = simulate_trial(model, links, length, derive_seed(seed, k), event_cap);
    });
    return EventData::from_local_times(model.dim(), m, horizon, std::move(trials));
}

Scenario parse_scenario(std::string_view id) {
    if (id == "a") return Scenario::a;
    if (id == "b") return Scenario::b;
    if (id == "c") return Scenario::c;
    throw InvalidArgument("unknown scenario '" + std::string(id) + "' (expected a, b or c)");
}

char scenario_name(Scenario s) {
    switch (s) {
    case Scenario::a: return 'a';
    case Scenario::b: return 'b';
    case Scenario::c: return 'c';
    }
    return '?';
}

std::size_t preset_block_size(Scenario s) {
    return s == Scenario::c ? 12 : 3;
}

namespace {

RealMatrix preset_block(Scenario s) {
    switch (s) {
    case Scenario::a: {
        RealMatrix a(3, 3);
        a << 0.0, 0.60, 0.0,
             0.0, 0.40, 0.0,
             0.0, 0.0, 0.40;
        return a;
    }
    case Scenario::b: {
        RealMatrix a(3, 3);
        a << 0.20, 0.10, 0.25,
             0.10, 0.20, 0.40,
             0.25, 0.40, 0.20;
        return a;
    }
    case Scenario::c: {
        RealMatrix a = RealMatrix::Zero(12, 12);
        a(0, 2) = a(2, 0) = 0.60;
        a(2, 3) = a(3, 2) = 0.80;
        a(1, 9) = a(9, 1) = 0.50;
        return a;
    }
    }
    return {};
}

// (c) is not stationary at beta = 0.86 (its 0-2-3 chain has eigenvalue 1);
// 1.2 puts the spectral radius at 0.833.
double preset_decay(Scenario s) {
    return s == Scenario::c ? 1.2 : 0.86;
}

} // namespace

HawkesModel preset(Scenario s, std::size_t p) {
    const std::size_t block = preset_block_size(s);
    if (p == 0 || p % block != 0) {
        throw InvalidArgument("preset: p = " + std::to_string(p) + " is not a multiple of " +
                              std::to_string(block) + " for scenario " + scenario_name(s));
    }
    const RealMatrix base = preset_block(s);
    const auto n = static_cast<Eigen::Index>(p);
    const auto b = static_cast<Eigen::Index>(block);
    RealMatrix alpha = RealMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; k += b) {
        alpha.block(k, k, b, b) = base;
    }
    return HawkesModel(RealVector::Constant(n, 0.2), alpha,
                       RealMatrix::Constant(n, n, preset_decay(s)));
}

} // namespace ppspec

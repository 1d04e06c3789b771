#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ppspec/errors.hpp"
#include "ppspec/events.hpp"
#include "ppspec/experiments.hpp"
#include "ppspec/hawkes.hpp"
#include "ppspec/io.hpp"
#include "ppspec/periodogram.hpp"
#include "ppspec/random.hpp"
#include "ppspec/rse.hpp"
#include "ppspec/taper.hpp"
#include "ppspec/tuning.hpp"

#ifndef PPSPEC_VERSION
#define PPSPEC_VERSION "0.0.0"
#endif

namespace ppspec::cli {

namespace {

namespace fs = std::filesystem;

// Thrown for semantic flag errors detected after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LayoutFlags {
    bool concatenated = false;
    bool separate = false;

    [[nodiscard]] io::TimeLayout layout() const {
        return concatenated ? io::TimeLayout::concatenated : io::TimeLayout::separate;
    }
};

void add_layout_flags(CLI::App* app, LayoutFlags& flags) {
    auto* c = app->add_flag("--trials-concatenated", flags.concatenated,
                            "Times are on the global axis (0, T]");
    auto* s = app->add_flag("--trials-separate", flags.separate, "Times are per-trial on (0, T/m] (default)");
    c->excludes(s);
}

struct SolverFlags {
    double tau = 1.0;
    double eps_abs = 1e-6;
    double eps_rel = 1e-4;
    std::size_t max_iter = 5000;
    bool no_penalize_diagonal = false;

    [[nodiscard]] RSEConfig config() const {
        RSEConfig c;
        c.admm_tau = tau;
        c.eps_abs = eps_abs;
        c.eps_rel = eps_rel;
        c.max_iter = max_iter;
        c.penalize_diagonal = !no_penalize_diagonal;
        return c;
    }
};

void add_solver_flags(CLI::App* app, SolverFlags& f) {
    app->add_option("--admm-tau", f.tau, "ADMM step size")->check(CLI::PositiveNumber);
    app->add_option("--eps-abs", f.eps_abs, "ADMM absolute tolerance")->check(CLI::PositiveNumber);
    app->add_option("--eps-rel", f.eps_rel, "ADMM relative tolerance")->check(CLI::PositiveNumber);
    app->add_option("--max-iter", f.max_iter, "ADMM iteration cap")->check(CLI::PositiveNumber);
    app->add_flag("--no-penalize-diagonal", f.no_penalize_diagonal, "Leave the diagonal unpenalised");
}

io::ReportHeader header(const std::vector<std::string>& args, std::uint64_t seed) {
    return {"ppspec", PPSPEC_VERSION, args, seed};
}

double max_diagonal(const HermitianMatrix& s) {
    double v = 0.0;
    for (std::size_t q = 0; q < s.dim(); ++q) {
        v = std::max(v, s.diag(q));
    }
    return v;
}

void ensure_output_dir(const fs::path& dir) {
    fs::create_directories(dir);
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string preset;
    std::string model_file;
    std::size_t p = 0;
    double horizon = 200.0;
    std::size_t m = 10;
    std::uint64_t seed = 1;
    std::string out;
    double budget = 1e8;
    LayoutFlags layout;
};

void setup_simulate(CLI::App& app, SimulateArgs& a) {
    auto* sub = app.add_subcommand("simulate", "Simulate a Hawkes process to an event CSV");
    auto* pr = sub->add_option("--preset", a.preset, "Benchmark preset")->check(CLI::IsMember({"a", "b", "c"}));
    auto* mf = sub->add_option("--model", a.model_file, "Hawkes model JSON file")->check(CLI::ExistingFile);
    pr->excludes(mf);
    sub->add_option("--p", a.p, "Channel count for a preset")->check(CLI::PositiveNumber);
    sub->add_option("--T", a.horizon, "Total horizon")->check(CLI::PositiveNumber);
    sub->add_option("--m", a.m, "Trial count")->check(CLI::PositiveNumber);
    sub->add_option("--seed", a.seed, "Random seed");
    sub->add_option("--out", a.out, "Output CSV path")->required();
    sub->add_option("--event-budget", a.budget, "Cap on expected event count")->check(CLI::PositiveNumber);
    add_layout_flags(sub, a.layout);
}

int run_simulate(const SimulateArgs& a, std::ostream& out) {
    HawkesModel model;
    if (!a.model_file.empty()) {
        model = io::model_from_json(io::read_text(a.model_file));
    } else if (!a.preset.empty()) {
        const Scenario s = parse_scenario(a.preset);
        model = preset(s, a.p == 0 ? preset_block_size(s) * 4 : a.p);
    } else {
        throw UsageError("simulate: one of --preset or --model is required");
    }
    const EventData data = simulate(model, a.horizon, a.m, a.seed, {a.budget});
    io::write_events(a.out, data, a.layout.layout());
    out << "wrote " << data.total_events() << " events (p=" << data.channels() << ", m=" << data.trials()
        << ") to " << a.out << '\n';
    return ok;
}

// ---------------------------------------------------------------------------

struct EstimateArgs {
    std::string in;
    std::vector<double> band_hz;
    std::optional<double> omega;
    std::string penalty = "lasso";
    std::optional<double> lambda;
    std::string select;
    double gamma = 0.5;
    std::size_t grid_size = 20;
    double zero_tol = 0.0;
    std::string out_theta;
    std::string out_graph;
    std::string report;
    bool strict = false;
    std::uint64_t seed = 0;
    SolverFlags solver;
    LayoutFlags layout;
};

void setup_estimate(CLI::App& app, EstimateArgs& a) {
    auto* sub = app.add_subcommand("estimate", "Estimate the inverse spectral matrix of an event CSV");
    sub->add_option("--in", a.in, "Event CSV (sidecar <csv>.json alongside)")->required()->check(CLI::ExistingFile);
    auto* band = sub->add_option("--band-hz", a.band_hz, "Frequency band lo hi in Hz")->expected(2);
    auto* om = sub->add_option("--omega", a.omega, "Angular frequency");
    band->excludes(om);
    sub->add_option("--penalty", a.penalty, "ridge or lasso")->check(CLI::IsMember({"ridge", "lasso"}));
    auto* lam = sub->add_option("--lambda", a.lambda, "Penalty weight")->check(CLI::NonNegativeNumber);
    auto* sel = sub->add_option("--select", a.select, "Model selection rule")->check(CLI::IsMember({"ebic"}));
    lam->excludes(sel);
    sub->add_option("--gamma", a.gamma, "eBIC gamma")->check(CLI::NonNegativeNumber);
    sub->add_option("--grid-size", a.grid_size, "eBIC grid size")->check(CLI::PositiveNumber);
    sub->add_option("--zero-tol", a.zero_tol, "Edge threshold on |theta_qr|")->check(CLI::NonNegativeNumber);
    sub->add_option("--out-theta", a.out_theta, "Output matrix CSV");
    sub->add_option("--out-graph", a.out_graph, "Output graph JSON");
    sub->add_option("--report", a.report, "Output eBIC path JSON");
    sub->add_option("--seed", a.seed, "Seed recorded in reports");
    sub->add_flag("--strict", a.strict, "Fail with exit code 3 if the solver does not converge");
    add_solver_flags(sub, a.solver);
    add_layout_flags(sub, a.layout);
}

void check_convergence(const RSEResult& r, bool strict, std::ostream& err) {
    if (r.converged) {
        return;
    }
    const std::string msg = "solver did not converge after " + std::to_string(r.iterations) + " iterations (primal " +
                            io::format_double(r.primal_residual) + ", dual " + io::format_double(r.dual_residual) +
                            ")";
    if (strict) {
        throw NonConvergence(msg);
    }
    err << "warning: " << msg << '\n';
}

int run_estimate(const EstimateArgs& a, const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
    if (a.band_hz.empty() && !a.omega) {
        throw UsageError("estimate: one of --band-hz or --omega is required");
    }
    if (!a.lambda && a.select.empty()) {
        throw UsageError("estimate: one of --lambda or --select is required");
    }
    if (a.out_theta.empty() && a.out_graph.empty()) {
        throw UsageError("estimate: nothing to write; give --out-theta and/or --out-graph");
    }
    const EventData data = io::read_events(a.in, a.layout.layout());
    const TaperSet taper = TaperSet::for_data(data);
    SpectralMatrix s_hat;
    if (!a.band_hz.empty()) {
        if (!(a.band_hz[1] > a.band_hz[0])) {
            throw UsageError("estimate: --band-hz needs lo < hi");
        }
        s_hat = smoothed_periodogram(data, taper, band_frequencies(taper, a.band_hz[0], a.band_hz[1]));
    } else {
        s_hat = periodogram(data, taper, *a.omega);
    }

    RSEConfig cfg = a.solver.config();
    cfg.penalty = parse_penalty(a.penalty);
    RSEResult result;
    if (a.lambda) {
        cfg.lambda = *a.lambda;
        result = estimate(s_hat, cfg);
    } else {
        if (cfg.penalty != Penalty::lasso) {
            throw UsageError("estimate: --select ebic requires --penalty lasso");
        }
        const auto grid = default_lambda_grid(max_diagonal(s_hat.matrix), a.grid_size);
        const EbicPath path = select_ebic(s_hat, grid, cfg, a.gamma, cfg.penalize_diagonal);
        if (!a.report.empty()) {
            io::write_text(a.report, io::ebic_report_json(path, header(args, a.seed)));
        }
        result = path.best();
        err << "eBIC selected lambda " << io::format_double(result.lambda) << '\n';
    }
    check_convergence(result, a.strict, err);

    if (!a.out_theta.empty()) {
        std::ostringstream csv;
        io::write_matrix_csv(csv, result.theta);
        io::write_text(a.out_theta, csv.str());
    }
    const PartialCoherenceGraph graph = extract_graph(result, a.zero_tol, s_hat.omega, s_hat.band);
    if (!a.out_graph.empty()) {
        io::write_text(a.out_graph, io::graph_to_json(graph));
    }
    out << "lambda " << io::format_double(result.lambda) << ", " << graph.edges.size() << " edges, "
        << result.iterations << " iterations\n";
    return ok;
}

// ---------------------------------------------------------------------------

struct TuneArgs {
    std::string preset = "a";
    std::size_t p = 12;
    double horizon = 10000.0;
    std::size_t m = 50;
    double omega = 0.0628;
    std::string penalty = "lasso";
    std::string criterion = "f1";
    std::size_t training = 5;
    std::size_t grid_size = 20;
    std::uint64_t seed = 1;
    std::string out;
    SolverFlags solver;
};

void setup_tune(CLI::App& app, TuneArgs& a) {
    auto* sub = app.add_subcommand("tune", "Select lambda against a synthetic Hawkes ground truth");
    sub->add_option("--preset", a.preset, "Benchmark preset")->check(CLI::IsMember({"a", "b", "c"}));
    sub->add_option("--p", a.p, "Channel count")->check(CLI::PositiveNumber);
    sub->add_option("--T", a.horizon, "Total horizon")->check(CLI::PositiveNumber);
    sub->add_option("--m", a.m, "Trial count")->check(CLI::PositiveNumber);
    sub->add_option("--omega", a.omega, "Requested angular frequency (snapped to the Fourier grid)");
    sub->add_option("--penalty", a.penalty, "ridge or lasso")->check(CLI::IsMember({"ridge", "lasso"}));
    sub->add_option("--criterion", a.criterion, "mse or f1")->check(CLI::IsMember({"mse", "f1"}));
    sub->add_option("--training", a.training, "Training replicates")->check(CLI::PositiveNumber);
    sub->add_option("--grid-size", a.grid_size, "Lambda grid size")->check(CLI::PositiveNumber);
    sub->add_option("--seed", a.seed, "Random seed");
    sub->add_option("--out", a.out, "Output report JSON")->required();
    add_solver_flags(sub, a.solver);
}

int run_tune(const TuneArgs& a, const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const HawkesModel model = preset(parse_scenario(a.preset), a.p);
    const std::size_t f = nearest_fourier_index(a.horizon, a.m, a.omega);
    const double omega = fourier_frequencies(a.horizon, a.m, f).back();
    const TaperSet taper(a.m, a.horizon);
    const GroundTruth truth = true_inverse_and_edges(model, omega);

    err << "simulating " << a.training << " training replicates\n";
    std::vector<SpectralMatrix> training;
    double scale = 0.0;
    for (std::size_t i = 0; i < a.training; ++i) {
        const EventData data = simulate(model, a.horizon, a.m, derive_seed(a.seed, 1'000'000 + i));
        training.push_back(periodogram(data, taper, omega));
        scale += max_diagonal(training.back().matrix);
    }
    const auto grid = default_lambda_grid(scale / static_cast<double>(a.training), a.grid_size);

    RSEConfig cfg = a.solver.config();
    cfg.penalty = parse_penalty(a.penalty);
    const GridSelection sel =
        grid_select(training, grid, parse_criterion(a.criterion), {truth.theta, truth.edges}, cfg);
    io::write_text(a.out, io::tuning_report_json(sel, header(args, a.seed), a.omega, omega));
    out << "lambda* " << io::format_double(sel.lambda_star) << '\n';
    return ok;
}

// ---------------------------------------------------------------------------

struct Table1Args {
    std::string scenario = "a";
    std::size_t p = 12;
    std::size_t m = 50;
    double trial_length = 200.0;
    std::size_t replicates = 20;
    std::size_t training = 5;
    double omega = 0.0628;
    std::size_t grid_size = 20;
    std::vector<std::string> estimators;
    std::uint64_t seed = 1;
    std::string out = ".";
    bool svg = false;
    bool timing = false;
    bool allow_large_p = false;
    SolverFlags solver;
};

void setup_table1(CLI::App* bench, Table1Args& a) {
    auto* sub = bench->add_subcommand("table1", "Monte Carlo comparison of estimators on a Hawkes preset");
    sub->add_option("--scenario", a.scenario, "Preset")->check(CLI::IsMember({"a", "b", "c"}));
    sub->add_option("--p", a.p, "Channel count")->check(CLI::PositiveNumber);
    sub->add_option("--m", a.m, "Trial count")->check(CLI::PositiveNumber);
    sub->add_option("--trial-length", a.trial_length, "Seconds per trial")->check(CLI::PositiveNumber);
    sub->add_option("--replicates", a.replicates, "Evaluation replicates")->check(CLI::PositiveNumber);
    sub->add_option("--training", a.training, "Training replicates")->check(CLI::PositiveNumber);
    sub->add_option("--omega", a.omega, "Requested angular frequency");
    sub->add_option("--grid-size", a.grid_size, "Lambda grid size")->check(CLI::PositiveNumber);
    sub->add_option("--estimators", a.estimators, "Subset of estimators")
        ->check(CLI::IsMember({"inverted_periodogram", "ridge", "lasso_mse", "lasso_f1"}));
    sub->add_option("--seed", a.seed, "Random seed");
    sub->add_option("--out", a.out, "Output directory");
    sub->add_flag("--svg", a.svg, "Also render SVG plots");
    sub->add_flag("--timing", a.timing, "Record wall-clock time in the report");
    sub->add_flag("--allow-large-p", a.allow_large_p, "Permit p > 48");
    add_solver_flags(sub, a.solver);
}

int run_bench_table1(const Table1Args& a, const std::vector<std::string>& args, std::ostream& out,
                     std::ostream& err) {
    Table1Config c;
    c.scenario = parse_scenario(a.scenario);
    c.p = a.p;
    c.m = a.m;
    c.trial_length = a.trial_length;
    c.replicates = a.replicates;
    c.training = a.training;
    c.omega = a.omega;
    c.grid_size = a.grid_size;
    c.seed = a.seed;
    c.solver = a.solver.config();
    c.allow_large_p = a.allow_large_p;
    if (!a.estimators.empty()) {
        c.estimators.clear();
        for (const auto& e : a.estimators) {
            c.estimators.push_back(parse_estimator(e));
        }
    }
    err << "table1: scenario " << a.scenario << ", p=" << c.p << ", m=" << c.m << ", " << c.replicates
        << " replicates\n";
    const MonteCarloReport report = run_table1(c);
    err << "table1: done in " << io::format_double(report.wall_clock_s) << " s\n";

    const fs::path dir = a.out;
    ensure_output_dir(dir);
    io::write_text(dir / "table1.json", io::table1_report_json(report, header(args, a.seed), a.timing));

    // Mean training score per lambda, one column per selection.
    std::vector<std::string> columns{"lambda"};
    for (const auto& s : report.selections) {
        columns.push_back(std::string(penalty_name(s.penalty)) + "_" + std::string(criterion_name(s.criterion)));
    }
    std::vector<std::vector<double>> rows;
    std::vector<io::PlotSeries> series;
    for (std::size_t j = 0; j < report.selections.size(); ++j) {
        series.push_back({columns[j + 1], {}});
    }
    for (std::size_t i = 0; i < report.lambda_grid.size(); ++i) {
        std::vector<double> row{report.lambda_grid[i]};
        for (std::size_t j = 0; j < report.selections.size(); ++j) {
            std::vector<double> col;
            for (const auto& rep : report.selections[j].scores) {
                col.push_back(rep[i]);
            }
            row.push_back(mean(col));
            series[j].points.emplace_back(std::log10(report.lambda_grid[i]), row.back());
        }
        rows.push_back(std::move(row));
    }
    std::ostringstream csv;
    io::write_plot_csv(csv, "table1 lambda path", columns, rows);
    io::write_text(dir / "table1_lambda_path.csv", csv.str());
    if (a.svg) {
        std::ostringstream svg;
        io::write_svg_lines(svg, "mean training score vs log10 lambda", series);
        io::write_text(dir / "table1_lambda_path.svg", svg.str());
    }

    for (const auto& s : report.estimators) {
        out << estimator_name(s.estimator) << ": ";
        if (s.completed == 0) {
            out << "failed\n";
            continue;
        }
        out << "MSE " << io::format_double(s.mse_mean()) << " (SE " << io::format_double(s.mse_se()) << ")";
        if (!s.scores.empty() && s.estimator != Estimator::ridge && s.estimator != Estimator::inverted_periodogram) {
            out << ", F1 " << io::format_double(s.f1_mean());
        }
        out << '\n';
    }
    return ok;
}

struct Figure1Args {
    std::size_t m = 10;
    double horizon = 1000.0;
    double rate = 1.0;
    double omega = 0.0628;
    std::size_t coherence_p = 7;
    std::size_t coherence_replicates = 1000;
    std::vector<std::size_t> dims;
    std::size_t replicates = 200;
    std::uint64_t seed = 1;
    std::string out = ".";
    bool svg = false;
};

void setup_figure1(CLI::App* bench, Figure1Args& a) {
    auto* sub = bench->add_subcommand("figure1", "Periodogram behaviour on independent Poisson processes");
    sub->add_option("--m", a.m, "Trial count")->check(CLI::PositiveNumber);
    sub->add_option("--T", a.horizon, "Total horizon")->check(CLI::PositiveNumber);
    sub->add_option("--rate", a.rate, "Poisson rate")->check(CLI::PositiveNumber);
    sub->add_option("--omega", a.omega, "Requested angular frequency");
    sub->add_option("--coherence-p", a.coherence_p, "Channels for the coherence panel")->check(CLI::Range(2, 1000));
    sub->add_option("--coherence-replicates", a.coherence_replicates, "Coherence samples")
        ->check(CLI::PositiveNumber);
    sub->add_option("--dims", a.dims, "Dimensions for the error and conditioning panels");
    sub->add_option("--replicates", a.replicates, "Replicates per dimension")->check(CLI::PositiveNumber);
    sub->add_option("--seed", a.seed, "Random seed");
    sub->add_option("--out", a.out, "Output directory");
    sub->add_flag("--svg", a.svg, "Also render SVG plots");
}

std::vector<std::vector<double>> band_rows(const std::vector<std::size_t>& dims, const std::vector<BandStat>& stats) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        rows.push_back({static_cast<double>(dims[i]), stats[i].median, stats[i].lo, stats[i].hi});
    }
    return rows;
}

std::vector<io::PlotSeries> band_series(const std::vector<std::size_t>& dims, const std::vector<BandStat>& stats) {
    std::vector<io::PlotSeries> s{{"median", {}}, {"2.5%", {}}, {"97.5%", {}}};
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const auto x = static_cast<double>(dims[i]);
        s[0].points.emplace_back(x, stats[i].median);
        s[1].points.emplace_back(x, stats[i].lo);
        s[2].points.emplace_back(x, stats[i].hi);
    }
    return s;
}

int run_bench_figure1(const Figure1Args& a, const std::vector<std::string>& args, std::ostream& out,
                      std::ostream& err) {
    Figure1Config c;
    c.m = a.m;
    c.horizon = a.horizon;
    c.rate = a.rate;
    c.omega = a.omega;
    c.coherence_p = a.coherence_p;
    c.coherence_replicates = a.coherence_replicates;
    if (!a.dims.empty()) {
        c.dims = a.dims;
    }
    c.replicates = a.replicates;
    c.seed = a.seed;
    err << "figure1: m=" << c.m << ", " << c.coherence_replicates << " coherence samples, " << c.dims.size()
        << " dimensions x " << c.replicates << " replicates\n";
    const Figure1Report report = run_figure1(c);

    const fs::path dir = a.out;
    ensure_output_dir(dir);
    io::write_text(dir / "figure1.json", io::figure1_report_json(report, header(args, a.seed)));

    // Panel a: histogram density of the samples next to the Goodman curve.
    constexpr std::size_t bins = 20;
    std::vector<double> hist(bins, 0.0);
    for (double v : report.coherence) {
        hist[std::min(bins - 1, static_cast<std::size_t>(v * bins))] += 1.0;
    }
    std::vector<std::vector<double>> rows_a;
    for (std::size_t b = 0; b < bins; ++b) {
        const double x = (static_cast<double>(b) + 0.5) / bins;
        rows_a.push_back({x, hist[b] * bins / static_cast<double>(report.coherence.size()),
                          goodman_density(x, c.m, 0.0)});
    }
    std::ostringstream a_csv;
    io::write_plot_csv(a_csv, "figure1a coherence", {"x", "empirical", "goodman"}, rows_a);
    io::write_text(dir / "figure1a_coherence.csv", a_csv.str());

    std::ostringstream b_csv;
    io::write_plot_csv(b_csv, "figure1b linf error", {"x", "median", "lo", "hi"},
                       band_rows(report.dims, report.linf_error));
    io::write_text(dir / "figure1b_error.csv", b_csv.str());

    std::ostringstream c_csv;
    io::write_plot_csv(c_csv, "figure1c condition number", {"x", "median", "lo", "hi"},
                       band_rows(report.dims, report.condition));
    io::write_text(dir / "figure1c_condition.csv", c_csv.str());

    if (a.svg) {
        std::ostringstream sa;
        std::ostringstream sb;
        std::ostringstream sc;
        io::write_svg_histogram(sa, "coherence, independent channels", report.coherence, 0.0, 1.0, bins,
                                {"goodman", report.density_overlay});
        io::write_svg_lines(sb, "elementwise-max error vs p", band_series(report.dims, report.linf_error));
        io::write_svg_lines(sc, "log10 condition number vs p", band_series(report.dims, report.condition), true);
        io::write_text(dir / "figure1a_coherence.svg", sa.str());
        io::write_text(dir / "figure1b_error.svg", sb.str());
        io::write_text(dir / "figure1c_condition.svg", sc.str());
    }
    out << "wrote figure1 panels to " << dir.string() << '\n';
    return ok;
}

// ---------------------------------------------------------------------------

struct GraphArgs {
    std::string in;
    std::string out;
    double omega = 0.0;
    std::vector<double> band_hz;
    double zero_tol = 0.0;
};

void setup_graph(CLI::App& app, GraphArgs& a) {
    auto* sub = app.add_subcommand("graph", "Partial-coherence graph of a matrix CSV");
    sub->add_option("--in", a.in, "Matrix CSV (q,r,re,im)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", a.out, "Output graph JSON")->required();
    auto* om = sub->add_option("--omega", a.omega, "Frequency label");
    sub->add_option("--band-hz", a.band_hz, "Band label lo hi in Hz")->expected(2)->excludes(om);
    sub->add_option("--zero-tol", a.zero_tol, "Edge threshold on |theta_qr|")->check(CLI::NonNegativeNumber);
}

int run_graph(const GraphArgs& a, std::ostream& out) {
    std::ifstream in(a.in);
    const HermitianMatrix theta = io::read_matrix_csv(in);
    std::optional<Band> band;
    double omega = a.omega;
    if (!a.band_hz.empty()) {
        band = Band{a.band_hz[0], a.band_hz[1], {}};
        omega = 0.0;
    }
    const PartialCoherenceGraph g = extract_graph(theta, a.zero_tol, omega, band);
    io::write_text(a.out, io::graph_to_json(g));
    out << g.edges.size() << " edges\n";
    return ok;
}

// ---------------------------------------------------------------------------

// Expands `--config FILE` into flags placed right after the subcommand path so
// that explicit command-line flags, parsed later, take precedence.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw UsageError("--config requires a file");
            }
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (!path) {
        return args;
    }
    std::ifstream in(*path);
    if (!in) {
        throw UsageError("cannot open config file " + *path);
    }
    std::vector<std::string> injected;
    for (const auto& [key, value] : io::parse_config(in)) {
        if (value == "true" || value == "false") {
            injected.push_back("--" + key + "=" + value);
            continue;
        }
        injected.push_back("--" + key);
        std::istringstream tokens(value);
        for (std::string t; tokens >> t;) {
            injected.push_back(t);
        }
    }
    std::size_t insert_at = std::min<std::size_t>(1, args.size());
    if (insert_at < args.size() && args[insert_at][0] != '-') {
        ++insert_at;
        if (args[insert_at - 1] == "bench" && insert_at < args.size() && args[insert_at][0] != '-') {
            ++insert_at;
        }
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(insert_at), injected.begin(), injected.end());
    return args;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args(argv, argv + argc);
    try {
        args = expand_config(std::move(args));
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }

    CLI::App app{"Regularised spectral estimation for multivariate point processes", "ppspec"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_version_flag("--version", PPSPEC_VERSION);
    app.add_option("--config", "Flat key = value file of flags (flags given on the command line win)");

    SimulateArgs sim;
    EstimateArgs est;
    TuneArgs tune;
    Table1Args t1;
    Figure1Args f1;
    GraphArgs graph;
    setup_simulate(app, sim);
    setup_estimate(app, est);
    setup_tune(app, tune);
    auto* bench = app.add_subcommand("bench", "Reproduce the benchmark studies");
    bench->require_subcommand(1);
    setup_table1(bench, t1);
    setup_figure1(bench, f1);
    setup_graph(app, graph);

    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*app.get_subcommand("simulate")) {
            return run_simulate(sim, out);
        }
        if (*app.get_subcommand("estimate")) {
            return run_estimate(est, args, out, err);
        }
        if (*app.get_subcommand("tune")) {
            return run_tune(tune, args, out, err);
        }
        if (*bench->get_subcommand("table1")) {
            return run_bench_table1(t1, args, out, err);
        }
        if (*bench->get_subcommand("figure1")) {
            return run_bench_figure1(f1, args, out, err);
        }
        return run_graph(graph, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const InvalidArgument& e) {
        err << "usage error: " << e.what() << '\n';
        return usage;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return numerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
}

} // namespace ppspec::cli

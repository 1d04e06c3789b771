#include "ppspec/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "ppspec/errors.hpp"

namespace ppspec::io {

using Json = nlohmann::ordered_json;

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

template <typename T>
T parse_number(std::string_view field, std::size_t line, const char* what) {
    T value{};
    const char* begin = field.data();
    const char* end = field.data() + field.size();
    if (!field.empty() && *begin == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (field.empty() || ec != std::errc{} || ptr != end) {
        throw ParseError(std::string("malformed ") + what + " '" + std::string(field) + "'", line);
    }
    return value;
}

Json json_number(double v) {
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

Json header_json(const ReportHeader& h) {
    return Json{{"tool", h.tool}, {"version", h.version}, {"command", h.command}, {"seed", h.seed}};
}

Json band_json(const Band& b) {
    return Json{{"band_hz", {b.lo_hz, b.hi_hz}}, {"frequencies", b.frequencies}};
}

Json parse_json(const std::string& text, const char* what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string(what) + ": " + e.what(), 1);
    }
}

RealMatrix matrix_from_json(const Json& j, const char* key, std::size_t p) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != p) {
        throw ValidationError(std::string("model JSON: '") + key + "' must be a " +
                              std::to_string(p) + "x" + std::to_string(p) + " array");
    }
    const auto n = static_cast<Eigen::Index>(p);
    RealMatrix m(n, n);
    for (std::size_t q = 0; q < p; ++q) {
        const Json& row = j[key][q];
        if (!row.is_array() || row.size() != p) {
            throw ValidationError(std::string("model JSON: row ") + std::to_string(q) + " of '" + key +
                                  "' has the wrong length");
        }
        for (std::size_t r = 0; r < p; ++r) {
            m(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(r)) = row[r].get<double>();
        }
    }
    return m;
}

} // namespace

std::string format_double(double v) {
    if (!std::isfinite(v)) {
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
    std::filesystem::path p = csv;
    p += ".json";
    return p;
}

std::string sidecar_to_json(const EventSidecar& s) {
    return Json{{"p", s.p}, {"m", s.m}, {"T", s.horizon}}.dump() + "\n";
}

EventSidecar sidecar_from_json(const std::string& text) {
    const Json j = parse_json(text, "sidecar JSON");
    try {
        EventSidecar s{j.at("p").get<std::size_t>(), j.at("m").get<std::size_t>(), j.at("T").get<double>()};
        if (s.p == 0 || s.m == 0 || !(s.horizon > 0.0)) {
            throw ValidationError("sidecar JSON: p, m and T must be positive");
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("sidecar JSON: ") + e.what());
    }
}

void write_events_csv(std::ostream& out, const EventData& data, TimeLayout layout) {
    out << "trial,channel,time\n";
    for (std::size_t k = 0; k < data.trials(); ++k) {
        const double offset = layout == TimeLayout::separate ? data.segment_start(k) : 0.0;
        for (std::size_t q = 0; q < data.channels(); ++q) {
            for (double t : data.events(k, q)) {
                out << k << ',' << q << ',' << format_double(t - offset) << '\n';
            }
        }
    }
}

EventData read_events_csv(std::istream& in, const EventSidecar& sidecar, TimeLayout layout) {
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) {
        throw ParseError("event CSV: missing header", 1);
    }
    ++line_no;
    if (trim(line) != "trial,channel,time") {
        throw ParseError("event CSV: expected header 'trial,channel,time'", line_no);
    }
    const double seg = sidecar.horizon / static_cast<double>(sidecar.m);
    const double slack = 1e-9 * seg;
    std::vector<EventData::Trial> trials(sidecar.m, EventData::Trial(sidecar.p));
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) {
            continue;
        }
        const auto fields = split(row, ',');
        if (fields.size() != 3) {
            throw ParseError("event CSV: expected 3 fields", line_no);
        }
        const auto k = parse_number<std::size_t>(fields[0], line_no, "trial index");
        const auto q = parse_number<std::size_t>(fields[1], line_no, "channel index");
        const auto t = parse_number<double>(fields[2], line_no, "time");
        if (k >= sidecar.m || q >= sidecar.p) {
            throw ValidationError("event CSV: trial/channel index out of range (line " +
                                  std::to_string(line_no) + ")");
        }
        const double lo = layout == TimeLayout::separate ? 0.0 : static_cast<double>(k) * seg;
        const double hi = layout == TimeLayout::separate ? seg : lo + seg;
        const bool outside = !std::isfinite(t) || t <= 0.0 || t <= lo - slack || t > hi + slack ||
                             (layout == TimeLayout::concatenated && t > sidecar.horizon + slack);
        if (outside) {
            throw ValidationError("event CSV: time " + std::string(fields[2]) +
                                  " outside the trial's window (line " + std::to_string(line_no) + ")");
        }
        auto& stream = trials[k][q];
        if (!stream.empty() && !(t > stream.back())) {
            throw ValidationError("event CSV: times of trial " + std::to_string(k) + " channel " +
                                  std::to_string(q) + " are not strictly increasing (line " +
                                  std::to_string(line_no) + ")");
        }
        stream.push_back(t);
    }
    if (layout == TimeLayout::separate) {
        return EventData::from_local_times(sidecar.p, sidecar.m, sidecar.horizon, std::move(trials));
    }
    return EventData(sidecar.p, sidecar.m, sidecar.horizon, std::move(trials));
}

void write_events(const std::filesystem::path& csv, const EventData& data, TimeLayout layout) {
    std::ostringstream out;
    write_events_csv(out, data, layout);
    write_text(csv, out.str());
    write_text(sidecar_path(csv), sidecar_to_json({data.channels(), data.trials(), data.horizon()}));
}

EventData read_events(const std::filesystem::path& csv, TimeLayout layout) {
    const EventSidecar sidecar = sidecar_from_json(read_text(sidecar_path(csv)));
    std::ifstream in(csv);
    if (!in) {
        throw ValidationError("cannot open " + csv.string());
    }
    return read_events_csv(in, sidecar, layout);
}

std::string model_to_json(const HawkesModel& model) {
    const std::size_t p = model.dim();
    Json nu = Json::array();
    Json alpha = Json::array();
    Json beta = Json::array();
    for (std::size_t q = 0; q < p; ++q) {
        const auto qi = static_cast<Eigen::Index>(q);
        nu.push_back(model.nu()[qi]);
        Json arow = Json::array();
        Json brow = Json::array();
        for (std::size_t r = 0; r < p; ++r) {
            arow.push_back(model.alpha()(qi, static_cast<Eigen::Index>(r)));
            brow.push_back(model.beta()(qi, static_cast<Eigen::Index>(r)));
        }
        alpha.push_back(std::move(arow));
        beta.push_back(std::move(brow));
    }
    return Json{{"nu", nu}, {"alpha", alpha}, {"beta", beta}}.dump(2) + "\n";
}

HawkesModel model_from_json(const std::string& text) {
    const Json j = parse_json(text, "model JSON");
    try {
        if (!j.contains("nu") || !j["nu"].is_array() || j["nu"].empty()) {
            throw ValidationError("model JSON: 'nu' must be a non-empty array");
        }
        const std::size_t p = j["nu"].size();
        RealVector nu(static_cast<Eigen::Index>(p));
        for (std::size_t q = 0; q < p; ++q) {
            nu[static_cast<Eigen::Index>(q)] = j["nu"][q].get<double>();
        }
        return HawkesModel(nu, matrix_from_json(j, "alpha", p), matrix_from_json(j, "beta", p));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("model JSON: ") + e.what());
    }
}

void write_matrix_csv(std::ostream& out, const HermitianMatrix& h) {
    out << "q,r,re,im\n";
    for (std::size_t q = 0; q < h.dim(); ++q) {
        for (std::size_t r = q; r < h.dim(); ++r) {
            const Complex v = h(q, r);
            out << q << ',' << r << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
        }
    }
}

HermitianMatrix read_matrix_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line) || trim(line) != "q,r,re,im") {
        throw ParseError("matrix CSV: expected header 'q,r,re,im'", line_no);
    }
    std::map<std::pair<std::size_t, std::size_t>, Complex> entries;
    std::size_t p = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) {
            continue;
        }
        const auto fields = split(row, ',');
        if (fields.size() != 4) {
            throw ParseError("matrix CSV: expected 4 fields", line_no);
        }
        const auto q = parse_number<std::size_t>(fields[0], line_no, "row index");
        const auto r = parse_number<std::size_t>(fields[1], line_no, "column index");
        const Complex v(parse_number<double>(fields[2], line_no, "real part"),
                        parse_number<double>(fields[3], line_no, "imaginary part"));
        if (q > r) {
            throw ParseError("matrix CSV: only the upper triangle (q <= r) may be given", line_no);
        }
        if (q == r && v.imag() != 0.0) {
            throw ParseError("matrix CSV: diagonal entries must be real", line_no);
        }
        if (!entries.emplace(std::make_pair(q, r), v).second) {
            throw ParseError("matrix CSV: duplicate entry", line_no);
        }
        p = std::max(p, r + 1);
    }
    std::vector<Complex> packed(p * (p + 1) / 2, Complex{});
    for (const auto& [key, v] : entries) {
        const auto [q, r] = key;
        packed[q * (2 * p - q + 1) / 2 + (r - q)] = v;
    }
    return HermitianMatrix::from_packed(p, std::move(packed));
}

std::string band_to_json(const Band& band) {
    return band_json(band).dump();
}

std::string graph_to_json(const PartialCoherenceGraph& g) {
    Json edges = Json::array();
    for (const auto& e : g.edges) {
        edges.push_back(Json{{"q", e.q}, {"r", e.r}, {"pc", e.pc}});
    }
    Json omega = g.band ? band_json(*g.band) : Json(g.omega);
    return Json{{"omega", omega}, {"p", g.p}, {"edges", edges}}.dump(2) + "\n";
}

PartialCoherenceGraph graph_from_json(const std::string& text) {
    const Json j = parse_json(text, "graph JSON");
    try {
        PartialCoherenceGraph g;
        const Json& omega = j.at("omega");
        if (omega.is_object()) {
            Band b;
            b.lo_hz = omega.at("band_hz").at(0).get<double>();
            b.hi_hz = omega.at("band_hz").at(1).get<double>();
            b.frequencies = omega.at("frequencies").get<std::vector<double>>();
            double sum = 0.0;
            for (double f : b.frequencies) {
                sum += f;
            }
            g.omega = b.frequencies.empty() ? 0.0 : sum / static_cast<double>(b.frequencies.size());
            g.band = std::move(b);
        } else {
            g.omega = omega.get<double>();
        }
        g.p = j.at("p").get<std::size_t>();
        for (const Json& e : j.at("edges")) {
            GraphEdge edge{e.at("q").get<std::size_t>(), e.at("r").get<std::size_t>(), e.at("pc").get<double>()};
            if (edge.q >= edge.r || edge.r >= g.p) {
                throw ValidationError("graph JSON: edges need q < r < p");
            }
            g.edges.push_back(edge);
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("graph JSON: ") + e.what());
    }
}

std::string table1_report_json(const MonteCarloReport& report, const ReportHeader& header,
                               bool include_timing) {
    const Table1Config& c = report.config;
    Json selections = Json::array();
    for (const auto& s : report.selections) {
        selections.push_back(Json{{"penalty", penalty_name(s.penalty)},
                                  {"criterion", criterion_name(s.criterion)},
                                  {"lambda_star", s.lambda_star},
                                  {"replicate_optima", s.replicate_optima},
                                  {"scores", s.scores}});
    }
    Json estimators = Json::array();
    for (const auto& e : report.estimators) {
        Json row{{"name", estimator_name(e.estimator)},
                 {"lambda", e.lambda},
                 {"completed", e.completed},
                 {"failures", e.failures},
                 {"inverse_failed", e.completed == 0},
                 {"mse_mean", json_number(e.mse_mean())},
                 {"mse_se", json_number(e.mse_se())},
                 {"frobenius_median", json_number(e.frobenius_median())}};
        if (e.estimator == Estimator::lasso_mse || e.estimator == Estimator::lasso_f1) {
            row["f1_mean"] = json_number(e.f1_mean());
            row["f1_se"] = json_number(e.f1_se());
            row["tpr_mean"] = json_number(e.tpr_mean());
            row["fpr_mean"] = json_number(e.fpr_mean());
            row["offblock_exact_zero"] = e.offblock_exact_zero;
            row["unconverged"] = e.unconverged;
        }
        estimators.push_back(std::move(row));
    }
    Json j{{"header", header_json(header)},
           {"scenario", std::string(1, scenario_name(c.scenario))},
           {"p", c.p},
           {"m", c.m},
           {"trial_length", c.trial_length},
           {"T", c.horizon()},
           {"replicates", c.replicates},
           {"training", c.training},
           {"omega_requested", report.omega_requested},
           {"omega_evaluated", report.omega_evaluated},
           {"fourier_index", report.fourier_index},
           {"true_edges", report.true_edges},
           {"lambda_grid", report.lambda_grid},
           {"selections", selections},
           {"estimators", estimators}};
    if (include_timing) {
        j["wall_clock_s"] = report.wall_clock_s;
    }
    return j.dump(2) + "\n";
}

std::string figure1_report_json(const Figure1Report& report, const ReportHeader& header) {
    Json dims = Json::array();
    for (std::size_t j = 0; j < report.dims.size(); ++j) {
        dims.push_back(Json{{"p", report.dims[j]},
                            {"linf_median", report.linf_error[j].median},
                            {"linf_lo", report.linf_error[j].lo},
                            {"linf_hi", report.linf_error[j].hi},
                            {"cond_median", json_number(report.condition[j].median)},
                            {"cond_lo", json_number(report.condition[j].lo)},
                            {"cond_hi", json_number(report.condition[j].hi)}});
    }
    const Figure1Config& c = report.config;
    double coherence_mean = 0.0;
    for (double v : report.coherence) {
        coherence_mean += v;
    }
    coherence_mean /= static_cast<double>(std::max<std::size_t>(1, report.coherence.size()));
    return Json{{"header", header_json(header)},
                {"m", c.m},
                {"T", c.horizon},
                {"rate", c.rate},
                {"omega_requested", c.omega},
                {"omega_evaluated", report.omega_evaluated},
                {"coherence_p", c.coherence_p},
                {"coherence_replicates", report.coherence.size()},
                {"coherence_mean", coherence_mean},
                {"replicates", c.replicates},
                {"dims", dims}}
               .dump(2) +
           "\n";
}

std::string tuning_report_json(const GridSelection& selection, const ReportHeader& header,
                               double omega_requested, double omega_evaluated) {
    Json per_lambda = Json::array();
    for (std::size_t i = 0; i < selection.lambdas.size(); ++i) {
        Json scores = Json::array();
        for (const auto& rep : selection.scores) {
            scores.push_back(rep[i]);
        }
        per_lambda.push_back(Json{{"lambda", selection.lambdas[i]}, {"scores", scores}});
    }
    return Json{{"header", header_json(header)},
                {"criterion", criterion_name(selection.criterion)},
                {"penalty", penalty_name(selection.penalty)},
                {"omega_requested", omega_requested},
                {"omega_evaluated", omega_evaluated},
                {"grid", selection.lambdas},
                {"per_lambda", per_lambda},
                {"replicate_optima", selection.replicate_optima},
                {"lambda_star", selection.lambda_star}}
               .dump(2) +
           "\n";
}

std::string ebic_report_json(const EbicPath& path, const ReportHeader& header) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < path.lambdas.size(); ++i) {
        const RSEResult& r = path.results[i];
        rows.push_back(Json{{"lambda", path.lambdas[i]},
                            {"ebic", path.scores[i]},
                            {"df", path.df[i]},
                            {"iterations", r.iterations},
                            {"converged", r.converged},
                            {"primal_residual", r.primal_residual},
                            {"dual_residual", r.dual_residual}});
    }
    return Json{{"header", header_json(header)},
                {"criterion", "ebic"},
                {"path", rows},
                {"selected_lambda", path.lambdas.at(path.selected)}}
               .dump(2) +
           "\n";
}

void write_plot_csv(std::ostream& out, const std::string& panel, const std::vector<std::string>& columns,
                    const std::vector<std::vector<double>>& rows) {
    out << "# " << panel << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_double(row[i]);
        }
        out << '\n';
    }
}

namespace {

struct Frame {
    double x0, x1, y0, y1;
    static constexpr double width = 480.0;
    static constexpr double height = 320.0;
    static constexpr double margin = 40.0;

    [[nodiscard]] double sx(double x) const {
        return margin + (x - x0) / (x1 - x0 == 0.0 ? 1.0 : x1 - x0) * (width - 2 * margin);
    }
    [[nodiscard]] double sy(double y) const {
        return height - margin - (y - y0) / (y1 - y0 == 0.0 ? 1.0 : y1 - y0) * (height - 2 * margin);
    }
};

void svg_open(std::ostream& out, const std::string& title, const Frame& f) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Frame::width << "\" height=\""
        << Frame::height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << Frame::width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title
        << "</text>\n"
        << "<line x1=\"" << f.sx(f.x0) << "\" y1=\"" << f.sy(f.y0) << "\" x2=\"" << f.sx(f.x1) << "\" y2=\""
        << f.sy(f.y0) << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << f.sx(f.x0) << "\" y1=\"" << f.sy(f.y0) << "\" x2=\"" << f.sx(f.x0) << "\" y2=\""
        << f.sy(f.y1) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << f.sx(f.x0) << "\" y=\"" << f.sy(f.y0) + 14 << "\" font-size=\"10\">"
        << format_double(f.x0) << "</text>\n"
        << "<text x=\"" << f.sx(f.x1) << "\" y=\"" << f.sy(f.y0) + 14 << "\" font-size=\"10\" text-anchor=\"end\">"
        << format_double(f.x1) << "</text>\n";
}

void svg_polyline(std::ostream& out, const Frame& f, const std::vector<std::pair<double, double>>& pts,
                  const char* colour) {
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" points=\"";
    for (const auto& [x, y] : pts) {
        out << f.sx(x) << ',' << f.sy(y) << ' ';
    }
    out << "\"/>\n";
}

} // namespace

void write_svg_lines(std::ostream& out, const std::string& title, const std::vector<PlotSeries>& series,
                     bool log_y) {
    std::vector<std::vector<std::pair<double, double>>> pts(series.size());
    Frame f{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < series.size(); ++i) {
        for (auto [x, y] : series[i].points) {
            if (log_y) {
                if (!(y > 0.0) || !std::isfinite(y)) {
                    continue;
                }
                y = std::log10(y);
            }
            if (!std::isfinite(y) || !std::isfinite(x)) {
                continue;
            }
            pts[i].emplace_back(x, y);
            f.x0 = std::min(f.x0, x);
            f.x1 = std::max(f.x1, x);
            f.y0 = std::min(f.y0, y);
            f.y1 = std::max(f.y1, y);
        }
    }
    if (!std::isfinite(f.x0)) {
        f = {0.0, 1.0, 0.0, 1.0};
    }
    svg_open(out, title, f);
    static constexpr const char* colours[] = {"black", "red", "blue", "green"};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        svg_polyline(out, f, pts[i], colours[i % 4]);
        out << "<text x=\"" << Frame::width - Frame::margin << "\" y=\"" << 36 + 12 * i
            << "\" font-size=\"10\" text-anchor=\"end\" fill=\"" << colours[i % 4] << "\">" << series[i].label
            << "</text>\n";
    }
    out << "</svg>\n";
}

void write_svg_histogram(std::ostream& out, const std::string& title, const std::vector<double>& samples,
                         double lo, double hi, std::size_t bins, const PlotSeries& overlay) {
    if (bins == 0 || !(hi > lo)) {
        throw InvalidArgument("write_svg_histogram: need bins > 0 and hi > lo");
    }
    std::vector<double> counts(bins, 0.0);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (double v : samples) {
        if (v < lo || v > hi) {
            continue;
        }
        const auto b = std::min(bins - 1, static_cast<std::size_t>((v - lo) / width));
        counts[b] += 1.0;
    }
    const double norm = samples.empty() ? 1.0 : static_cast<double>(samples.size()) * width;
    double y_max = 0.0;
    for (double& c : counts) {
        c /= norm;
        y_max = std::max(y_max, c);
    }
    for (const auto& [x, y] : overlay.points) {
        if (std::isfinite(y)) {
            y_max = std::max(y_max, y);
        }
    }
    const Frame f{lo, hi, 0.0, y_max > 0.0 ? y_max : 1.0};
    svg_open(out, title, f);
    for (std::size_t b = 0; b < bins; ++b) {
        const double x = lo + static_cast<double>(b) * width;
        out << "<rect x=\"" << f.sx(x) << "\" y=\"" << f.sy(counts[b]) << "\" width=\""
            << f.sx(x + width) - f.sx(x) << "\" height=\"" << f.sy(0.0) - f.sy(counts[b])
            << "\" fill=\"lightgrey\" stroke=\"grey\"/>\n";
    }
    svg_polyline(out, f, overlay.points, "black");
    out << "</svg>\n";
}

std::vector<std::pair<std::string, std::string>> parse_config(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view row = line;
        if (const auto hash = row.find('#'); hash != std::string_view::npos) {
            row = row.substr(0, hash);
        }
        row = trim(row);
        if (row.empty()) {
            continue;
        }
        const auto eq = row.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("config: expected 'key = value'", line_no);
        }
        const auto key = trim(row.substr(0, eq));
        const auto value = trim(row.substr(eq + 1));
        if (key.empty()) {
            throw ParseError("config: empty key", line_no);
        }
        out.emplace_back(std::string(key), std::string(value));
    }
    return out;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write " + path.string());
    }
    out << text;
}

} // namespace ppspec::io

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ppspec/events.hpp"
#include "ppspec/experiments.hpp"
#include "ppspec/hawkes.hpp"
#include "ppspec/hermitian.hpp"
#include "ppspec/rse.hpp"
#include "ppspec/tuning.hpp"

namespace ppspec::io {

/// Shortest decimal representation that round-trips to the same double.
[[nodiscard]] std::string format_double(double v);

// ---------------------------------------------------------------------------
// Event streams: CSV `trial,channel,time` plus sidecar JSON {"p","m","T"}.
// T is the total horizon. With the separate layout every trial's times are
// local to (0, T/m]; with the concatenated layout they are global in (0, T].

enum class TimeLayout { separate, concatenated };

struct EventSidecar {
    std::size_t p = 0;
    std::size_t m = 0;
    double horizon = 0.0;
};

[[nodiscard]] std::filesystem::path sidecar_path(const std::filesystem::path& csv);

[[nodiscard]] std::string sidecar_to_json(const EventSidecar& s);
[[nodiscard]] EventSidecar sidecar_from_json(const std::string& text);

void write_events_csv(std::ostream& out, const EventData& data, TimeLayout layout = TimeLayout::separate);
[[nodiscard]] EventData read_events_csv(std::istream& in, const EventSidecar& sidecar,
                                        TimeLayout layout = TimeLayout::separate);

void write_events(const std::filesystem::path& csv, const EventData& data,
                  TimeLayout layout = TimeLayout::separate);
[[nodiscard]] EventData read_events(const std::filesystem::path& csv,
                                    TimeLayout layout = TimeLayout::separate);

// ---------------------------------------------------------------------------
// Hawkes model JSON: {"nu": [...], "alpha": [[...]], "beta": [[...]]}.

[[nodiscard]] std::string model_to_json(const HawkesModel& model);
[[nodiscard]] HawkesModel model_from_json(const std::string& text);

// ---------------------------------------------------------------------------
// Complex matrix CSV `q,r,re,im`, 0-based, upper triangle and diagonal only.

void write_matrix_csv(std::ostream& out, const HermitianMatrix& h);
[[nodiscard]] HermitianMatrix read_matrix_csv(std::istream& in);

// ---------------------------------------------------------------------------
// Graph and report JSON.

[[nodiscard]] std::string band_to_json(const Band& band);
[[nodiscard]] std::string graph_to_json(const PartialCoherenceGraph& g);
[[nodiscard]] PartialCoherenceGraph graph_from_json(const std::string& text);

struct ReportHeader {
    std::string tool = "ppspec";
    std::string version;
    std::vector<std::string> command; // argv as invoked
    std::uint64_t seed = 0;
};

[[nodiscard]] std::string table1_report_json(const MonteCarloReport& report, const ReportHeader& header,
                                             bool include_timing = false);
[[nodiscard]] std::string figure1_report_json(const Figure1Report& report, const ReportHeader& header);
[[nodiscard]] std::string tuning_report_json(const GridSelection& selection, const ReportHeader& header,
                                             double omega_requested, double omega_evaluated);
[[nodiscard]] std::string ebic_report_json(const EbicPath& path, const ReportHeader& header);

// ---------------------------------------------------------------------------
// Plot data CSV: a `# <panel>` line, a column header, then rows.

void write_plot_csv(std::ostream& out, const std::string& panel, const std::vector<std::string>& columns,
                    const std::vector<std::vector<double>>& rows);

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// Minimal line chart. `log_y` plots log10 of positive finite values.
void write_svg_lines(std::ostream& out, const std::string& title, const std::vector<PlotSeries>& series,
                     bool log_y = false);
/// Histogram of samples on [lo, hi] with an optional overlaid curve (density units).
void write_svg_histogram(std::ostream& out, const std::string& title, const std::vector<double>& samples,
                         double lo, double hi, std::size_t bins, const PlotSeries& overlay);

// ---------------------------------------------------------------------------
// Flat `key = value` configuration; '#' starts a comment.

[[nodiscard]] std::vector<std::pair<std::string, std::string>> parse_config(std::istream& in);

[[nodiscard]] std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace ppspec::io

#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ppspec/errors.hpp"
#include "ppspec/hawkes.hpp"
#include "ppspec/io.hpp"
#include "ppspec/random.hpp"

using namespace ppspec;
namespace fs = std::filesystem;

namespace {

EventData read_csv(const std::string& text, const io::EventSidecar& sidecar,
                   io::TimeLayout layout = io::TimeLayout::separate) {
    std::istringstream in(text);
    return io::read_events_csv(in, sidecar, layout);
}

template <typename E>
std::string error_message(const std::function<void()>& f) {
    try {
        f();
    } catch (const E& e) {
        return e.what();
    }
    return "";
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "ppspec_io_tests";
    fs::create_directories(dir);
    return dir / name;
}

void expect_same_events(const EventData& a, const EventData& b, double tol) {
    ASSERT_EQ(a.channels(), b.channels());
    ASSERT_EQ(a.trials(), b.trials());
    ASSERT_EQ(a.horizon(), b.horizon());
    for (std::size_t k = 0; k < a.trials(); ++k) {
        for (std::size_t q = 0; q < a.channels(); ++q) {
            const auto x = a.events(k, q);
            const auto y = b.events(k, q);
            ASSERT_EQ(x.size(), y.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                EXPECT_NEAR(x[i], y[i], tol);
            }
        }
    }
}

} // namespace

TEST(FormatDouble, ShortestRoundTrip) {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double v = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<int>(40 * rng.uniform()) - 20);
        EXPECT_EQ(std::stod(io::format_double(v)), v);
    }
    EXPECT_EQ(io::format_double(0.5), "0.5");
    EXPECT_EQ(io::format_double(200.0), "200");
    EXPECT_EQ(io::format_double(std::numeric_limits<double>::infinity()), "inf");
}

TEST(EventCsv, EmptyFileGivesNoEvents) {
    const EventData d = read_csv("trial,channel,time\n", {3, 2, 10.0});
    EXPECT_EQ(d.total_events(), 0u);
    EXPECT_EQ(d.channels(), 3u);
    EXPECT_EQ(d.trials(), 2u);
}

TEST(EventCsv, SeparateLayoutOffsetsTrials) {
    const EventData d = read_csv("trial,channel,time\n0,0,1.5\n1,0,1.5\n1,1,5\n", {2, 2, 10.0});
    EXPECT_DOUBLE_EQ(d.events(0, 0)[0], 1.5);
    EXPECT_DOUBLE_EQ(d.events(1, 0)[0], 6.5);
    EXPECT_DOUBLE_EQ(d.events(1, 1)[0], 10.0);
}

TEST(EventCsv, ConcatenatedLayoutUsesGlobalTimes) {
    const EventData d =
        read_csv("trial,channel,time\n0,0,1.5\n1,0,6.5\n", {1, 2, 10.0}, io::TimeLayout::concatenated);
    EXPECT_DOUBLE_EQ(d.events(1, 0)[0], 6.5);
    EXPECT_THROW((void)read_csv("trial,channel,time\n1,0,1.5\n", {1, 2, 10.0}, io::TimeLayout::concatenated),
                 ValidationError);
}

TEST(EventCsv, UnsortedTimesRejectedWithLineNumber) {
    const std::string text = "trial,channel,time\n0,0,1.0\n0,1,0.5\n0,0,3.0\n0,0,2.0\n";
    const std::string msg = error_message<ValidationError>([&] { (void)read_csv(text, {2, 1, 10.0}); });
    EXPECT_NE(msg.find("line 5"), std::string::npos) << msg;
}

TEST(EventCsv, TimesOutsideWindowRejected) {
    const io::EventSidecar s{1, 2, 10.0};
    EXPECT_THROW((void)read_csv("trial,channel,time\n0,0,0\n", s), ValidationError);
    EXPECT_THROW((void)read_csv("trial,channel,time\n0,0,5.5\n", s), ValidationError);
    EXPECT_THROW((void)read_csv("trial,channel,time\n0,0,-1\n", s), ValidationError);
    EXPECT_NO_THROW((void)read_csv("trial,channel,time\n0,0,5\n", s));
    const std::string msg =
        error_message<ValidationError>([&] { (void)read_csv("trial,channel,time\n0,0,1\n0,0,9\n", s); });
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(EventCsv, MalformedRowsAreParseErrors) {
    const io::EventSidecar s{2, 1, 10.0};
    try {
        (void)read_csv("trial,channel,time\n0,0,1\n0,x,2\n", s);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW((void)read_csv("trial,channel,time\n0,0\n", s), ParseError);
    EXPECT_THROW((void)read_csv("trial,channel,time\n0,0,1,2\n", s), ParseError);
    EXPECT_THROW((void)read_csv("time,channel,trial\n", s), ParseError);
    EXPECT_THROW((void)read_csv("", s), ParseError);
    EXPECT_THROW((void)read_csv("trial,channel,time\n0,2,1\n", s), ValidationError);
    EXPECT_THROW((void)read_csv("trial,channel,time\n1,0,1\n", s), ValidationError);
}

TEST(EventCsv, RoundTripOnSimulatedPreset) {
    const HawkesModel model = preset(Scenario::a, 9);
    const EventData data = simulate(model, 200.0, 10, 17);
    ASSERT_GT(data.total_events(), 100u);

    std::ostringstream concat;
    io::write_events_csv(concat, data, io::TimeLayout::concatenated);
    const EventData exact = read_csv(concat.str(), {9, 10, 200.0}, io::TimeLayout::concatenated);
    EXPECT_TRUE(exact == data);

    std::ostringstream sep;
    io::write_events_csv(sep, data);
    expect_same_events(read_csv(sep.str(), {9, 10, 200.0}), data, 1e-12);
}

TEST(EventFiles, SidecarRoundTrip) {
    const EventData data = oracle::poisson_events(3, 4, 40.0, 1.0, 2);
    const fs::path csv = scratch("events.csv");
    io::write_events(csv, data);
    EXPECT_TRUE(fs::exists(io::sidecar_path(csv)));
    EXPECT_EQ(io::sidecar_path(csv).filename(), "events.csv.json");
    expect_same_events(io::read_events(csv), data, 1e-12);

    const io::EventSidecar s = io::sidecar_from_json(io::sidecar_to_json({3, 4, 40.0}));
    EXPECT_EQ(s.p, 3u);
    EXPECT_EQ(s.m, 4u);
    EXPECT_EQ(s.horizon, 40.0);
    EXPECT_THROW((void)io::sidecar_from_json("{\"p\": 0, \"m\": 1, \"T\": 1}"), ValidationError);
    EXPECT_THROW((void)io::sidecar_from_json("{\"p\": 1}"), ValidationError);
    EXPECT_THROW((void)io::read_events(scratch("missing.csv")), Error);
}

TEST(ModelJson, RoundTrip) {
    for (Scenario s : {Scenario::a, Scenario::b, Scenario::c}) {
        const HawkesModel model = preset(s, 2 * preset_block_size(s));
        const HawkesModel back = io::model_from_json(io::model_to_json(model));
        EXPECT_EQ(back.nu(), model.nu());
        EXPECT_EQ(back.alpha(), model.alpha());
        EXPECT_EQ(back.beta(), model.beta());
    }
    EXPECT_THROW((void)io::model_from_json("{\"nu\": []}"), ValidationError);
    EXPECT_THROW((void)io::model_from_json("not json"), Error);
}

TEST(MatrixCsv, RoundTripIsExact) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const HermitianMatrix h = HermitianMatrix::hermitian_part(oracle::random_hermitian(1 + seed % 6, seed));
        std::ostringstream out;
        io::write_matrix_csv(out, h);
        std::istringstream in(out.str());
        EXPECT_TRUE(io::read_matrix_csv(in) == h);
    }
}

TEST(MatrixCsv, MissingEntriesAreZeroAndBadRowsRejected) {
    std::istringstream sparse("q,r,re,im\n0,0,1\n");
    EXPECT_THROW((void)io::read_matrix_csv(sparse), ParseError);

    std::istringstream partial("q,r,re,im\n0,0,1,0\n2,2,3,0\n0,2,0.5,-0.25\n");
    const HermitianMatrix h = io::read_matrix_csv(partial);
    ASSERT_EQ(h.dim(), 3u);
    EXPECT_EQ(h(1, 1), Complex{});
    EXPECT_EQ(h(2, 0), Complex(0.5, 0.25));

    std::istringstream lower("q,r,re,im\n1,0,1,0\n");
    EXPECT_THROW((void)io::read_matrix_csv(lower), ParseError);
    std::istringstream dup("q,r,re,im\n0,1,1,0\n0,1,2,0\n");
    EXPECT_THROW((void)io::read_matrix_csv(dup), ParseError);
    std::istringstream complex_diag("q,r,re,im\n0,0,1,0.5\n");
    EXPECT_THROW((void)io::read_matrix_csv(complex_diag), ParseError);
}

TEST(GraphJson, RoundTripScalarAndBand) {
    PartialCoherenceGraph g;
    g.omega = 0.0628;
    g.p = 4;
    g.edges = {{0, 1, 0.25}, {1, 3, 0.125}};
    const PartialCoherenceGraph back = io::graph_from_json(io::graph_to_json(g));
    EXPECT_EQ(back.omega, g.omega);
    EXPECT_EQ(back.p, 4u);
    EXPECT_EQ(back.edges, g.edges);
    EXPECT_FALSE(back.band.has_value());

    g.band = Band{0.0, 4.0, {3.14, 6.28}};
    g.omega = 4.71;
    const PartialCoherenceGraph banded = io::graph_from_json(io::graph_to_json(g));
    ASSERT_TRUE(banded.band.has_value());
    EXPECT_EQ(banded.band->hi_hz, 4.0);
    EXPECT_EQ(banded.band->frequencies, g.band->frequencies);
    EXPECT_NE(io::graph_to_json(g).find("\"band_hz\""), std::string::npos);
}

TEST(GraphJson, RejectsInvalidEdges) {
    EXPECT_THROW((void)io::graph_from_json("{\"omega\":1,\"p\":2,\"edges\":[{\"q\":1,\"r\":0,\"pc\":0.5}]}"), Error);
    EXPECT_THROW((void)io::graph_from_json("{\"omega\":1,\"p\":2,\"edges\":[{\"q\":0,\"r\":2,\"pc\":0.5}]}"), Error);
}

TEST(PlotCsv, PanelHeaderThenRows) {
    std::ostringstream out;
    io::write_plot_csv(out, "figure1b", {"x", "median", "lo", "hi"}, {{2, 0.5, 0.25, 1}, {5, 0.75, 0.5, 1.5}});
    EXPECT_EQ(out.str(), "# figure1b\nx,median,lo,hi\n2,0.5,0.25,1\n5,0.75,0.5,1.5\n");
}

TEST(Svg, WritersEmitDocuments) {
    std::ostringstream lines;
    io::write_svg_lines(lines, "err", {{"median", {{2, 0.1}, {5, 0.2}, {9, 0.4}}}}, true);
    EXPECT_NE(lines.str().find("<svg"), std::string::npos);
    EXPECT_NE(lines.str().find("</svg>"), std::string::npos);
    std::ostringstream hist;
    io::write_svg_histogram(hist, "coh", {0.1, 0.2, 0.2, 0.8}, 0.0, 1.0, 10, {"goodman", {{0.0, 9.0}, {1.0, 0.0}}});
    EXPECT_NE(hist.str().find("<svg"), std::string::npos);
}

TEST(ConfigFile, KeyValuePairsAndComments) {
    std::istringstream in("# comment\nseed = 7\n\n  p=12  # trailing\nband-hz = 0 4\n");
    const auto kv = io::parse_config(in);
    ASSERT_EQ(kv.size(), 3u);
    EXPECT_EQ(kv[0], (std::pair<std::string, std::string>{"seed", "7"}));
    EXPECT_EQ(kv[1], (std::pair<std::string, std::string>{"p", "12"}));
    EXPECT_EQ(kv[2], (std::pair<std::string, std::string>{"band-hz", "0 4"}));

    std::istringstream bad("seed = 7\njust words\n");
    try {
        (void)io::parse_config(bad);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(TextFiles, WriteCreatesParents) {
    const fs::path p = scratch("nested/dir/out.txt");
    fs::remove_all(p.parent_path());
    io::write_text(p, "hello\n");
    EXPECT_EQ(io::read_text(p), "hello\n");
}

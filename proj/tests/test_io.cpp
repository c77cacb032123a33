#include <gtest/gtest.h>

#include <random>

#include "bullwhip/bullwhip.hpp"
#include "bullwhip/io/csv.hpp"
#include "bullwhip/io/digest.hpp"
#include "bullwhip/io/render.hpp"
#include "bullwhip/io/sim_config.hpp"
#include "bullwhip/reference_data.hpp"
#include "oracles.hpp"

using namespace bullwhip;
using namespace bullwhip::io;

namespace {

const char* kTable4Csv =
    "period,product,demand,order\n"
    "1,A,9,9\n"
    "2,A,5,5\n"
    "3,A,8,8\n"
    "4,A,6,6\n"
    "5,A,7,7\n"
    "6,A,9,10\n";

ErrorCode code_of(const std::string& text) {
    try {
        (void)load_csv_text(text);
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::invalid_series;
}

Report decompose_report() {
    DecomposeReport r;
    r.entries.push_back({"A", "demand", 2, decompose_variance(reference::table4_demand(), 2)});
    r.entries.push_back({"A", "order", 3, decompose_variance(reference::table5_orders(), 3)});
    return Report{ReportMeta{std::string(kVersion), sha256_hex(kTable4Csv), {{"k", {2, 3}}}}, r};
}

Report time_agg_report(const Series& o, const Series& d, double eps = kStrictMaintainEps) {
    TimeAggReport r;
    r.products.push_back({"A", sweep_aggregation(o, d, {1, 2, 3, 4, 5}, eps)});
    return Report{ReportMeta{}, r};
}

}  // namespace

TEST(Csv, LoadsSingleProduct) {
    const PanelDataset p = load_csv_text(kTable4Csv);
    ASSERT_EQ(p.products_count(), 1u);
    EXPECT_EQ(p.products()[0], "A");
    EXPECT_EQ(p.demand()[0], reference::table4_demand());
    EXPECT_EQ(p.orders()[0], reference::table5_orders());
}

TEST(Csv, CrlfBomAndBlankLines) {
    const std::string text = "\xEF\xBB\xBFperiod,product,demand,order\r\n1,A,1,2\r\n\r\n2,A,3,4\r\n";
    const PanelDataset p = load_csv_text(text);
    EXPECT_EQ(p.demand()[0], (Series{1, 3}));
    EXPECT_EQ(p.orders()[0], (Series{2, 4}));
}

TEST(Csv, MultiProductUnsortedRows) {
    const std::string text =
        "period,product,demand,order\n"
        "2,\"x,1\",2,20\n"
        "1,y,5,50\n"
        "1,\"x,1\",1,10\n"
        "2,y,6,60\n";
    const PanelDataset p = load_csv_text(text);
    ASSERT_EQ(p.products(), (std::vector<std::string>{"x,1", "y"}));
    EXPECT_EQ(p.demand()[0], (Series{1, 2}));
    EXPECT_EQ(p.orders()[1], (Series{50, 60}));
    EXPECT_EQ(load_csv_text(write_csv(p)).products(), p.products());
}

TEST(Csv, WriteReadRoundTripIsExact) {
    std::mt19937_64 rng(13);
    std::vector<Series> d;
    std::vector<Series> o;
    for (int i = 0; i < 3; ++i) {
        d.push_back(oracle::random_series(25, rng));
        o.push_back(oracle::random_series(25, rng));
    }
    const PanelDataset p({"a", "b", "c"}, d, o);
    const PanelDataset back = load_csv_text(write_csv(p));
    EXPECT_EQ(back.demand(), p.demand());
    EXPECT_EQ(back.orders(), p.orders());
}

TEST(Csv, Errors) {
    EXPECT_EQ(code_of(""), ErrorCode::empty_dataset);
    EXPECT_EQ(code_of("period,product,demand,order\n"), ErrorCode::empty_dataset);
    EXPECT_EQ(code_of("period,product,demand\n1,A,3\n"), ErrorCode::missing_column);
    EXPECT_EQ(code_of("period,product,demand,order\n1,A,3\n"), ErrorCode::missing_column);
    EXPECT_EQ(code_of("period,product,demand,order\n1,A,3,x\n"), ErrorCode::non_numeric_value);
    EXPECT_EQ(code_of("period,product,demand,order\n1,A,nan,1\n"), ErrorCode::non_numeric_value);
    EXPECT_EQ(code_of("period,product,demand,order\n1,A,1,1\n1,A,2,2\n"), ErrorCode::duplicate_row);
    EXPECT_EQ(code_of("period,product,demand,order\n1,A,1,1\n2,A,1,1\n1,B,1,1\n"), ErrorCode::length_mismatch);
}

TEST(Csv, GapReportsRowAndColumn) {
    try {
        (void)load_csv_text("period,product,demand,order\n1,A,1,1\n2,A,2,2\n4,A,3,3\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::gap_in_periods);
        ASSERT_TRUE(e.where().has_value());
        EXPECT_EQ(e.where()->row, 3u);
        EXPECT_EQ(e.where()->column, "period");
        EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos);
    }
}

TEST(Digest, KnownVectors) {
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(SimConfigFile, ParseAndRoundTrip) {
    const SimConfig c = parse_sim_config_text(
        "# demand\nhorizon = 120\nphi = 0.5\nseed = 7\nseasonal_period = 12\nseasonal_amplitude = 3\n"
        "truncate_orders = true\n");
    EXPECT_EQ(c.horizon, 120u);
    EXPECT_DOUBLE_EQ(c.phi, 0.5);
    EXPECT_EQ(c.seed, 7u);
    EXPECT_EQ(c.seasonal_period, std::optional<std::size_t>(12));
    EXPECT_TRUE(c.truncate_orders);
    EXPECT_EQ(parse_sim_config_text(render_sim_config(c)), c);
    EXPECT_EQ(parse_sim_config_text(render_sim_config(SimConfig{})), SimConfig{});
}

TEST(SimConfigFile, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW((void)parse_sim_config_text("horizon = 100\ncolour = red\n"), Error);
    EXPECT_THROW((void)parse_sim_config_text("phi = 2\n"), Error);
    EXPECT_THROW((void)parse_sim_config_text("horizon = many\n"), Error);
}

TEST(Render, DecomposeTableLine) {
    const std::string out = render_report(decompose_report(), Format::table);
    EXPECT_NE(out.find("A demand k=2 M=3  within 2.00 between 0.22 total 2.22"), std::string::npos) << out;
}

TEST(Render, TimeAggTableLines) {
    const std::string out = render_report(time_agg_report(reference::table6_orders(), reference::table6_demand()),
                                          Format::table);
    EXPECT_NE(out.find("  R_non_agg 1.47\n"), std::string::npos) << out;
    EXPECT_NE(out.find("  R_agg 0.82\n"), std::string::npos) << out;
    EXPECT_NE(out.find("  R_agg 2.38\n"), std::string::npos) << out;
    EXPECT_NE(out.find("IndivisibleLength"), std::string::npos) << out;
}

TEST(Render, FixedTwoDecimals) {
    EXPECT_EQ(fixed2(-0.001), "0.00");
    EXPECT_EQ(fixed2(2.0 / 9.0), "0.22");
    EXPECT_EQ(fixed2(std::numeric_limits<double>::infinity()), "inf");
}

TEST(ReportJson, RoundTripEveryKind) {
    std::vector<Report> reports;
    reports.push_back(decompose_report());
    reports.push_back(time_agg_report(reference::table6_orders(), reference::table6_demand(), 0.02));

    const PanelDataset panel({"a", "b"}, {reference::table6_demand(), reference::table6_orders()},
                             {reference::table6_orders(), reference::table6_demand()});
    reports.push_back(Report{ReportMeta{}, product_report(panel)});

    // Singular demand covariance: upper bound is infinite and must survive as null.
    const Series d = reference::table6_demand();
    const PanelDataset singular({"a", "b"}, {d, d}, {reference::table6_orders(), d});
    const ProductReport sr = product_report(singular);
    ASSERT_TRUE(sr.bounds.upper_unbounded);
    reports.push_back(Report{ReportMeta{}, sr});

    SeasonalityReports seas;
    seas.entries.push_back({"a", classify_seasonality(reference::table6_orders(), reference::table6_demand(), 3)});
    seas.entries.push_back(
        {"b", classify_seasonality(reference::table6_orders(), reference::table6_demand(), 4, false)});
    reports.push_back(Report{ReportMeta{}, seas});

    SimConfig c;
    c.seasonal_period = 12;
    const SimRun run = simulate(c);
    SimulateReport sim{c, run.warmup_dropped, population_variance(run.demand), population_variance(run.orders),
                       bullwhip_ratio(run.orders, run.demand), run.demand.vector(), run.orders.vector(),
                       monte_carlo_regimes(c, {2, 4}, 5)};
    reports.push_back(Report{ReportMeta{}, sim});

    for (const auto& r : reports) {
        const std::string text = render_report(r, Format::json);
        const Report back = parse_report(text);
        EXPECT_EQ(back, r) << to_string(r.kind());
        EXPECT_EQ(render_report(back, Format::json), text);
        EXPECT_EQ(nlohmann::json::parse(text).at("kind"), std::string(to_string(r.kind())));
    }
}

TEST(ReportJson, RandomizedTimeAggRoundTrip) {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        const Series d = oracle::random_series(60, rng, 20.0, 4.0);
        const Series o = oracle::random_series(60, rng, 20.0, 7.0);
        const Report r = time_agg_report(o, d);
        EXPECT_EQ(parse_report(render_report(r, Format::json)), r);
    }
}

TEST(ReportJson, MalformedInput) {
    auto code = [](std::string_view text) {
        try {
            (void)parse_report(text);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::invalid_series;
    };
    EXPECT_EQ(code("{"), ErrorCode::malformed_report);
    EXPECT_EQ(code(R"({"kind":"nonsense","meta":{"version":"1","input_sha256":"","params":{}},"payload":{}})"),
              ErrorCode::malformed_report);
    EXPECT_EQ(code(R"({"kind":"decompose"})"), ErrorCode::malformed_report);
}

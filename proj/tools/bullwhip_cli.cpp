// bullwhip: command-line front end for the variance analytics library.
//
// Exit status: 0 on success, 1 on data errors (message on stderr), 2 on usage errors.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bullwhip/bullwhip.hpp"
#include "bullwhip/io/csv.hpp"
#include "bullwhip/io/digest.hpp"
#include "bullwhip/io/render.hpp"
#include "bullwhip/io/sim_config.hpp"
#include "bullwhip/reference_data.hpp"

namespace {

using namespace bullwhip;

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string input;
    std::string format = "json";
    std::vector<std::size_t> k;
    std::size_t period = 0;
    double maintain_eps = kStrictMaintainEps;
    bool truncate = false;
    bool shared_seasonal = false;
    bool per_series_seasonal = false;
    std::string config;
    std::optional<std::uint64_t> seed;
    std::size_t reps = 0;
};

std::string read_all(std::istream& in) {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") return read_all(std::cin);
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open input file '" + path + "'");
    return read_all(f);
}

PartitionMode mode_of(const Options& o) { return o.truncate ? PartitionMode::truncate : PartitionMode::strict; }

nlohmann::json common_params(const Options& o) {
    nlohmann::json p;
    if (!o.k.empty()) p["k"] = o.k;
    p["truncate"] = o.truncate;
    return p;
}

Report run_decompose(const Options& o, const std::string& bytes) {
    const PanelDataset panel = io::load_csv_text(bytes);
    DecomposeReport r;
    for (std::size_t n = 0; n < panel.products_count(); ++n)
        for (std::size_t k : o.k) {
            r.entries.push_back({panel.products()[n], "demand", k, decompose_variance(panel.demand()[n], k, mode_of(o))});
            r.entries.push_back({panel.products()[n], "order", k, decompose_variance(panel.orders()[n], k, mode_of(o))});
        }
    return Report{ReportMeta{std::string(kVersion), io::sha256_hex(bytes), common_params(o)}, r};
}

Report run_time_agg(const Options& o, const std::string& bytes) {
    const PanelDataset panel = io::load_csv_text(bytes);
    TimeAggReport r;
    for (std::size_t n = 0; n < panel.products_count(); ++n)
        r.products.push_back({panel.products()[n], sweep_aggregation(panel.orders()[n], panel.demand()[n], o.k,
                                                                     o.maintain_eps, mode_of(o))});
    nlohmann::json params = common_params(o);
    params["maintain_eps"] = o.maintain_eps;
    return Report{ReportMeta{std::string(kVersion), io::sha256_hex(bytes), params}, r};
}

Report run_product_agg(const std::string& bytes) {
    const PanelDataset panel = io::load_csv_text(bytes);
    return Report{ReportMeta{std::string(kVersion), io::sha256_hex(bytes), nlohmann::json::object()},
                  product_report(panel)};
}

Report run_seasonality(const Options& o, const std::string& bytes) {
    const PanelDataset panel = io::load_csv_text(bytes);
    const bool shared = !o.per_series_seasonal;
    SeasonalityReports r;
    for (std::size_t n = 0; n < panel.products_count(); ++n)
        r.entries.push_back(
            {panel.products()[n], classify_seasonality(panel.orders()[n], panel.demand()[n], o.period, shared)});
    nlohmann::json params{{"period", o.period}, {"shared_seasonal", shared}};
    return Report{ReportMeta{std::string(kVersion), io::sha256_hex(bytes), params}, r};
}

Report run_simulate(const Options& o) {
    SimConfig c;
    if (!o.config.empty()) {
        std::ifstream f(o.config);
        if (!f) throw std::runtime_error("cannot open config file '" + o.config + "'");
        c = io::parse_sim_config(f);
    }
    if (o.seed) c.seed = *o.seed;
    validate(c);

    const SimRun run = simulate(c);
    SimulateReport r{c,
                     run.warmup_dropped,
                     population_variance(run.demand),
                     population_variance(run.orders),
                     bullwhip_ratio(run.orders, run.demand),
                     run.demand.vector(),
                     run.orders.vector(),
                     {}};
    nlohmann::json params{{"reps", o.reps}, {"maintain_eps", o.maintain_eps}};
    if (o.reps > 0) {
        const std::vector<std::size_t> ks = o.k.empty() ? std::vector<std::size_t>{2, 3, 4, 6} : o.k;
        r.regimes = monte_carlo_regimes(c, ks, o.reps, o.maintain_eps);
        params["k"] = ks;
    }
    // The digest covers the effective configuration, so equal runs hash equally.
    return Report{ReportMeta{std::string(kVersion), io::sha256_hex(io::render_sim_config(c)), params}, r};
}

int run_replicate() {
    bool all = true;
    for (const auto& t : reference::replicate_tables()) {
        std::cout << t.name << ": " << (t.pass ? "PASS" : "FAIL") << '\n';
        for (const auto& m : t.mismatches) std::cout << "  " << m << '\n';
        all = all && t.pass;
    }
    return all ? 0 : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bullwhip ratio analytics: variance decomposition under time aggregation, product aggregation "
                 "and seasonality, plus an order-up-to simulator."};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Options o;
    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("--input", o.input, "CSV with header period,product,demand,order (default: stdin)");
    };
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", o.format, "Output format")
            ->check(CLI::IsMember({"json", "table"}))
            ->capture_default_str();
    };
    auto add_k = [&](CLI::App* cmd, bool required) {
        auto* opt = cmd->add_option("--k", o.k, "Subset sizes, comma separated")
                        ->delimiter(',')
                        ->check(CLI::PositiveNumber);
        if (required) opt->required();
    };

    auto* decompose = app.add_subcommand("decompose", "Within/between variance of each series for each k");
    add_input(decompose);
    add_format(decompose);
    add_k(decompose, true);
    decompose->add_flag("--truncate", o.truncate, "Drop the tail that does not fill a whole subset");

    auto* time_agg = app.add_subcommand("time-agg", "Bullwhip ratio before and after time aggregation");
    add_input(time_agg);
    add_format(time_agg);
    add_k(time_agg, true);
    time_agg->add_flag("--truncate", o.truncate, "Drop the tail that does not fill a whole subset");
    time_agg->add_option("--maintain-eps", o.maintain_eps, "Relative band within which ratios count as equal")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    auto* product_agg = app.add_subcommand("product-agg", "Bullwhip ratio of the product-sum against per-product ratios");
    add_input(product_agg);
    add_format(product_agg);

    auto* seasonality = app.add_subcommand("seasonality", "Effect of a seasonal component on the ratio");
    add_input(seasonality);
    add_format(seasonality);
    seasonality->add_option("--period", o.period, "Season length in periods")->required()->check(CLI::Range(2, 1 << 20));
    auto* shared = seasonality->add_flag("--shared-seasonal", o.shared_seasonal,
                                         "Remove the demand seasonal pattern from orders too (default)");
    auto* per_series = seasonality->add_flag("--per-series-seasonal", o.per_series_seasonal,
                                             "Estimate a separate seasonal pattern for orders");
    shared->excludes(per_series);

    auto* sim = app.add_subcommand("simulate", "AR(1) demand through an order-up-to policy");
    add_format(sim);
    sim->add_option("--config", o.config, "key = value file with simulation parameters");
    sim->add_option("--seed", o.seed, "Override the configured seed");
    sim->add_option("--reps", o.reps, "Monte Carlo replications for the regime table (0 = none)")
        ->capture_default_str();
    add_k(sim, false);
    sim->add_option("--maintain-eps", o.maintain_eps, "Relative band for the regime table")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    auto* replicate = app.add_subcommand("replicate-paper", "Check the built-in reference tables");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (replicate->parsed()) return run_replicate();

        Report report;
        if (sim->parsed()) {
            report = run_simulate(o);
        } else {
            const std::string bytes = read_input(o.input);
            if (decompose->parsed()) report = run_decompose(o, bytes);
            else if (time_agg->parsed()) report = run_time_agg(o, bytes);
            else if (product_agg->parsed()) report = run_product_agg(bytes);
            else report = run_seasonality(o, bytes);
        }
        std::cout << io::render_report(report, o.format == "table" ? io::Format::table : io::Format::json);
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
}

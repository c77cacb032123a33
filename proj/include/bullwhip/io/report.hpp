#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "bullwhip/product_aggregation.hpp"
#include "bullwhip/seasonality.hpp"
#include "bullwhip/simulation.hpp"
#include "bullwhip/time_aggregation.hpp"
#include "bullwhip/version.hpp"

namespace bullwhip {

// ---------------------------------------------------------------------------
// Report payloads
// ---------------------------------------------------------------------------

struct DecomposeEntry {
    std::string product;
    std::string series;  // "demand" or "order"
    std::size_t k = 1;
    VarianceDecomposition decomposition;

    friend bool operator==(const DecomposeEntry&, const DecomposeEntry&) = default;
};

struct DecomposeReport {
    std::vector<DecomposeEntry> entries;
    friend bool operator==(const DecomposeReport&, const DecomposeReport&) = default;
};

struct ProductSweep {
    std::string product;
    std::vector<SweepEntry> sweep;
    friend bool operator==(const ProductSweep&, const ProductSweep&) = default;
};

struct TimeAggReport {
    std::vector<ProductSweep> products;
    friend bool operator==(const TimeAggReport&, const TimeAggReport&) = default;
};

struct SeasonalityEntry {
    std::string product;
    SeasonalityReport report;
    friend bool operator==(const SeasonalityEntry&, const SeasonalityEntry&) = default;
};

struct SeasonalityReports {
    std::vector<SeasonalityEntry> entries;
    friend bool operator==(const SeasonalityReports&, const SeasonalityReports&) = default;
};

struct SimulateReport {
    SimConfig config;
    std::size_t warmup_dropped = 0;
    double var_demand = 0.0;
    double var_orders = 0.0;
    double bullwhip_ratio = 0.0;
    std::vector<double> demand;
    std::vector<double> orders;
    std::vector<RegimeCounts> regimes;  // empty unless a Monte Carlo sweep was requested

    friend bool operator==(const SimulateReport&, const SimulateReport&) = default;
};

enum class ReportKind { decompose, time_agg, product_agg, seasonality, simulate };

[[nodiscard]] constexpr std::string_view to_string(ReportKind k) noexcept {
    switch (k) {
        case ReportKind::decompose: return "decompose";
        case ReportKind::time_agg: return "time-agg";
        case ReportKind::product_agg: return "product-agg";
        case ReportKind::seasonality: return "seasonality";
        case ReportKind::simulate: return "simulate";
    }
    return "decompose";
}

struct ReportMeta {
    std::string version = std::string(kVersion);
    std::string input_sha256;
    nlohmann::json params = nlohmann::json::object();

    friend bool operator==(const ReportMeta&, const ReportMeta&) = default;
};

// Alternative order matches ReportKind.
using ReportPayload = std::variant<DecomposeReport, TimeAggReport, ProductReport, SeasonalityReports, SimulateReport>;

struct Report {
    ReportMeta meta;
    ReportPayload payload;

    [[nodiscard]] ReportKind kind() const noexcept { return static_cast<ReportKind>(payload.index()); }

    friend bool operator==(const Report&, const Report&) = default;
};

// ---------------------------------------------------------------------------
// JSON mapping (nlohmann ADL hooks). Field names follow the struct members.
// ---------------------------------------------------------------------------

namespace json_detail {

template <typename E, std::size_t N>
E enum_from(const nlohmann::json& j, const std::array<E, N>& values) {
    const auto s = j.get<std::string>();
    for (E v : values)
        if (to_string(v) == s) return v;
    throw Error(ErrorCode::malformed_report, "unknown enum value '" + s + "'");
}

}  // namespace json_detail

inline void to_json(nlohmann::json& j, const VarianceDecomposition& d) {
    j = {{"total", d.total},
         {"within", d.within},
         {"between", d.between},
         {"subset_variances", d.subset_variances},
         {"subset_means", d.subset_means}};
}
inline void from_json(const nlohmann::json& j, VarianceDecomposition& d) {
    j.at("total").get_to(d.total);
    j.at("within").get_to(d.within);
    j.at("between").get_to(d.between);
    j.at("subset_variances").get_to(d.subset_variances);
    j.at("subset_means").get_to(d.subset_means);
}

inline void to_json(nlohmann::json& j, const AggregationReport& r) {
    j = {{"k", r.k},
         {"r_non_agg", r.r_non_agg},
         {"r_agg", r.r_agg},
         {"r_avg", r.r_avg},
         {"r_within", r.r_within},
         {"demand_decomp", r.demand_decomp},
         {"order_decomp", r.order_decomp},
         {"effect", to_string(r.effect)},
         {"effect_at_eps", to_string(r.effect_at_eps)},
         {"maintain_eps", r.maintain_eps},
         {"trichotomy_consistent", r.trichotomy_consistent}};
}
inline void from_json(const nlohmann::json& j, AggregationReport& r) {
    constexpr std::array effects{AggregationEffect::increase, AggregationEffect::decrease, AggregationEffect::maintain};
    j.at("k").get_to(r.k);
    j.at("r_non_agg").get_to(r.r_non_agg);
    j.at("r_agg").get_to(r.r_agg);
    j.at("r_avg").get_to(r.r_avg);
    j.at("r_within").get_to(r.r_within);
    j.at("demand_decomp").get_to(r.demand_decomp);
    j.at("order_decomp").get_to(r.order_decomp);
    r.effect = json_detail::enum_from(j.at("effect"), effects);
    r.effect_at_eps = json_detail::enum_from(j.at("effect_at_eps"), effects);
    j.at("maintain_eps").get_to(r.maintain_eps);
    j.at("trichotomy_consistent").get_to(r.trichotomy_consistent);
}

inline void to_json(nlohmann::json& j, const SweepEntry& e) {
    j = {{"k", e.k}, {"report", nullptr}, {"error", nullptr}};
    if (e.report) j["report"] = *e.report;
    if (e.error) j["error"] = *e.error;
}
inline void from_json(const nlohmann::json& j, SweepEntry& e) {
    j.at("k").get_to(e.k);
    e.report.reset();
    e.error.reset();
    if (!j.at("report").is_null()) e.report = j.at("report").get<AggregationReport>();
    if (!j.at("error").is_null()) e.error = j.at("error").get<std::string>();
}

inline void to_json(nlohmann::json& j, const Matrix& m) {
    j = nlohmann::json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.size(); ++c) row.push_back(m(i, c));
        j.push_back(std::move(row));
    }
}
inline void from_json(const nlohmann::json& j, Matrix& m) {
    m = Matrix(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (j[i].size() != j.size()) throw Error(ErrorCode::malformed_report, "matrix is not square");
        for (std::size_t c = 0; c < j.size(); ++c) m(i, c) = j[i][c].get<double>();
    }
}

inline void to_json(nlohmann::json& j, const ProductRatios& r) {
    j = {{"ratios", r.ratios},
         {"weights", r.weights},
         {"weighted_ratio", r.weighted_ratio},
         {"exact_aggregated", r.exact_aggregated}};
}
inline void from_json(const nlohmann::json& j, ProductRatios& r) {
    j.at("ratios").get_to(r.ratios);
    j.at("weights").get_to(r.weights);
    j.at("weighted_ratio").get_to(r.weighted_ratio);
    j.at("exact_aggregated").get_to(r.exact_aggregated);
}

inline void to_json(nlohmann::json& j, const CovariancePair& p) {
    j = {{"sigma_orders", p.sigma_orders},
         {"sigma_demand", p.sigma_demand},
         {"eigen_orders", p.eigen_orders},
         {"eigen_demand", p.eigen_demand}};
}
inline void from_json(const nlohmann::json& j, CovariancePair& p) {
    j.at("sigma_orders").get_to(p.sigma_orders);
    j.at("sigma_demand").get_to(p.sigma_demand);
    j.at("eigen_orders").get_to(p.eigen_orders);
    j.at("eigen_demand").get_to(p.eigen_demand);
}

// An unbounded upper limit is written as null.
inline void to_json(nlohmann::json& j, const EigenBounds& b) {
    j = {{"lower", b.lower},
         {"upper", b.upper_unbounded ? nlohmann::json(nullptr) : nlohmann::json(b.upper)},
         {"upper_unbounded", b.upper_unbounded},
         {"r_add", b.r_add ? nlohmann::json(*b.r_add) : nlohmann::json(nullptr)},
         {"contains_r_add", b.contains_r_add}};
}
inline void from_json(const nlohmann::json& j, EigenBounds& b) {
    j.at("lower").get_to(b.lower);
    j.at("upper_unbounded").get_to(b.upper_unbounded);
    b.upper = b.upper_unbounded ? std::numeric_limits<double>::infinity() : j.at("upper").get<double>();
    b.r_add.reset();
    if (!j.at("r_add").is_null()) b.r_add = j.at("r_add").get<double>();
    j.at("contains_r_add").get_to(b.contains_r_add);
}

inline void to_json(nlohmann::json& j, const ProductReport& r) {
    j = {{"products", r.products},
         {"ratios", r.ratios},
         {"covariance", r.covariance},
         {"r_add", r.r_add},
         {"bounds", r.bounds},
         {"escapes_uncorrelated_bounds", r.escapes_uncorrelated_bounds}};
}
inline void from_json(const nlohmann::json& j, ProductReport& r) {
    j.at("products").get_to(r.products);
    j.at("ratios").get_to(r.ratios);
    j.at("covariance").get_to(r.covariance);
    j.at("r_add").get_to(r.r_add);
    j.at("bounds").get_to(r.bounds);
    j.at("escapes_uncorrelated_bounds").get_to(r.escapes_uncorrelated_bounds);
}

inline void to_json(nlohmann::json& j, const SeasonalityReport& r) {
    j = {{"period", r.period},
         {"shared_seasonal", r.shared_seasonal},
         {"r_adjusted", r.r_adjusted},
         {"r_all", r.r_all},
         {"r_all_model", r.r_all_model},
         {"var_seasonal", r.var_seasonal},
         {"var_demand_adjusted", r.var_demand_adjusted},
         {"var_orders_adjusted", r.var_orders_adjusted},
         {"relation", to_string(r.relation)},
         {"relation_holds", r.relation_holds}};
}
inline void from_json(const nlohmann::json& j, SeasonalityReport& r) {
    constexpr std::array relations{SeasonalRelation::toward_one_from_above, SeasonalRelation::toward_one_from_below,
                                   SeasonalRelation::exactly_one};
    j.at("period").get_to(r.period);
    j.at("shared_seasonal").get_to(r.shared_seasonal);
    j.at("r_adjusted").get_to(r.r_adjusted);
    j.at("r_all").get_to(r.r_all);
    j.at("r_all_model").get_to(r.r_all_model);
    j.at("var_seasonal").get_to(r.var_seasonal);
    j.at("var_demand_adjusted").get_to(r.var_demand_adjusted);
    j.at("var_orders_adjusted").get_to(r.var_orders_adjusted);
    r.relation = json_detail::enum_from(j.at("relation"), relations);
    j.at("relation_holds").get_to(r.relation_holds);
}

inline void to_json(nlohmann::json& j, const SimConfig& c) {
    j = {{"horizon", c.horizon},
         {"phi", c.phi},
         {"mu", c.mu},
         {"sigma", c.sigma},
         {"forecast_window", c.forecast_window},
         {"lead_time", c.lead_time},
         {"seed", c.seed},
         {"seasonal_amplitude", c.seasonal_amplitude},
         {"seasonal_period", c.seasonal_period ? nlohmann::json(*c.seasonal_period) : nlohmann::json(nullptr)},
         {"truncate_orders", c.truncate_orders}};
}
inline void from_json(const nlohmann::json& j, SimConfig& c) {
    j.at("horizon").get_to(c.horizon);
    j.at("phi").get_to(c.phi);
    j.at("mu").get_to(c.mu);
    j.at("sigma").get_to(c.sigma);
    j.at("forecast_window").get_to(c.forecast_window);
    j.at("lead_time").get_to(c.lead_time);
    j.at("seed").get_to(c.seed);
    j.at("seasonal_amplitude").get_to(c.seasonal_amplitude);
    c.seasonal_period.reset();
    if (!j.at("seasonal_period").is_null()) c.seasonal_period = j.at("seasonal_period").get<std::size_t>();
    j.at("truncate_orders").get_to(c.truncate_orders);
}

inline void to_json(nlohmann::json& j, const RegimeCounts& r) {
    j = {{"k", r.k}, {"increase", r.increase}, {"decrease", r.decrease}, {"maintain", r.maintain}, {"errors", r.errors}};
}
inline void from_json(const nlohmann::json& j, RegimeCounts& r) {
    j.at("k").get_to(r.k);
    j.at("increase").get_to(r.increase);
    j.at("decrease").get_to(r.decrease);
    j.at("maintain").get_to(r.maintain);
    j.at("errors").get_to(r.errors);
}

inline void to_json(nlohmann::json& j, const DecomposeReport& r) {
    j = nlohmann::json::object();
    auto& entries = j["entries"] = nlohmann::json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"product", e.product}, {"series", e.series}, {"k", e.k}, {"decomposition", e.decomposition}});
}
inline void from_json(const nlohmann::json& j, DecomposeReport& r) {
    r.entries.clear();
    for (const auto& e : j.at("entries"))
        r.entries.push_back({e.at("product").get<std::string>(), e.at("series").get<std::string>(),
                             e.at("k").get<std::size_t>(), e.at("decomposition").get<VarianceDecomposition>()});
}

inline void to_json(nlohmann::json& j, const TimeAggReport& r) {
    j = nlohmann::json::object();
    auto& products = j["products"] = nlohmann::json::array();
    for (const auto& p : r.products) products.push_back({{"product", p.product}, {"sweep", p.sweep}});
}
inline void from_json(const nlohmann::json& j, TimeAggReport& r) {
    r.products.clear();
    for (const auto& p : j.at("products"))
        r.products.push_back({p.at("product").get<std::string>(), p.at("sweep").get<std::vector<SweepEntry>>()});
}

inline void to_json(nlohmann::json& j, const SeasonalityReports& r) {
    j = nlohmann::json::object();
    auto& entries = j["entries"] = nlohmann::json::array();
    for (const auto& e : r.entries) entries.push_back({{"product", e.product}, {"report", e.report}});
}
inline void from_json(const nlohmann::json& j, SeasonalityReports& r) {
    r.entries.clear();
    for (const auto& e : j.at("entries"))
        r.entries.push_back({e.at("product").get<std::string>(), e.at("report").get<SeasonalityReport>()});
}

inline void to_json(nlohmann::json& j, const SimulateReport& r) {
    j = {{"config", r.config},
         {"warmup_dropped", r.warmup_dropped},
         {"var_demand", r.var_demand},
         {"var_orders", r.var_orders},
         {"bullwhip_ratio", r.bullwhip_ratio},
         {"demand", r.demand},
         {"orders", r.orders},
         {"regimes", r.regimes}};
}
inline void from_json(const nlohmann::json& j, SimulateReport& r) {
    j.at("config").get_to(r.config);
    j.at("warmup_dropped").get_to(r.warmup_dropped);
    j.at("var_demand").get_to(r.var_demand);
    j.at("var_orders").get_to(r.var_orders);
    j.at("bullwhip_ratio").get_to(r.bullwhip_ratio);
    j.at("demand").get_to(r.demand);
    j.at("orders").get_to(r.orders);
    j.at("regimes").get_to(r.regimes);
}

inline void to_json(nlohmann::json& j, const Report& r) {
    j = nlohmann::json::object();
    j["kind"] = to_string(r.kind());
    j["meta"] = {{"version", r.meta.version}, {"input_sha256", r.meta.input_sha256}, {"params", r.meta.params}};
    std::visit([&](const auto& p) { j["payload"] = p; }, r.payload);
}

inline void from_json(const nlohmann::json& j, Report& r) {
    const auto& meta = j.at("meta");
    meta.at("version").get_to(r.meta.version);
    meta.at("input_sha256").get_to(r.meta.input_sha256);
    r.meta.params = meta.at("params");
    const auto& p = j.at("payload");
    constexpr std::array kinds{ReportKind::decompose, ReportKind::time_agg, ReportKind::product_agg,
                               ReportKind::seasonality, ReportKind::simulate};
    switch (json_detail::enum_from(j.at("kind"), kinds)) {
        case ReportKind::decompose: r.payload = p.get<DecomposeReport>(); break;
        case ReportKind::time_agg: r.payload = p.get<TimeAggReport>(); break;
        case ReportKind::product_agg: r.payload = p.get<ProductReport>(); break;
        case ReportKind::seasonality: r.payload = p.get<SeasonalityReports>(); break;
        case ReportKind::simulate: r.payload = p.get<SimulateReport>(); break;
    }
}

}  // namespace bullwhip

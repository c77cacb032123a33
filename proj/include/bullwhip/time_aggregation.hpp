#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bullwhip/core_stats.hpp"

namespace bullwhip {

/// Effect of summing k consecutive periods on the bullwhip ratio.
enum class AggregationEffect { increase, decrease, maintain };

[[nodiscard]] constexpr std::string_view to_string(AggregationEffect e) noexcept {
    switch (e) {
        case AggregationEffect::increase: return "increase";
        case AggregationEffect::decrease: return "decrease";
        case AggregationEffect::maintain: return "maintain";
    }
    return "maintain";
}

/// Default maintain band: |r_avg - r_within| <= eps * max(r_avg, r_within).
inline constexpr double kStrictMaintainEps = 1e-9;

/// Element j is the sum of subset j (k consecutive periods).
[[nodiscard]] inline Series aggregate_series(const Series& s, std::size_t k,
                                             PartitionMode mode = PartitionMode::strict) {
    const Partition layout = partition_layout(s.size(), k, mode);
    std::vector<double> out(layout.subsets, 0.0);
    for (std::size_t j = 0; j < layout.subsets; ++j)
        for (std::size_t i = 0; i < k; ++i) out[j] += s[j * k + i];
    return Series(std::move(out));
}

/// Var(aggregated orders) / Var(aggregated demands).
[[nodiscard]] inline double aggregated_bullwhip(const Series& orders, const Series& demands,
                                                std::size_t k,
                                                PartitionMode mode = PartitionMode::strict) {
    require_same_length(orders, demands);
    const double vd = population_variance(aggregate_series(demands, k, mode));
    if (!(vd > 0.0))
        throw Error(ErrorCode::degenerate_demand,
                    "aggregated demand has zero variance at k=" + std::to_string(k) +
                        " (all subset sums equal)");
    return population_variance(aggregate_series(orders, k, mode)) / vd;
}

[[nodiscard]] inline AggregationEffect classify_effect(double r_avg, double r_within, double eps) noexcept {
    const double diff = r_avg - r_within;
    if (std::abs(diff) <= eps * std::max(std::abs(r_avg), std::abs(r_within))) return AggregationEffect::maintain;
    return diff > 0.0 ? AggregationEffect::increase : AggregationEffect::decrease;
}

/**
 * The four ratios of a time-aggregation analysis.
 *
 * r_non_agg is the mediant of r_within and r_avg, so the sign of
 * (r_avg - r_within) fixes the sign of (r_agg - r_non_agg). `effect` uses the
 * strict band; `effect_at_eps` uses the caller's band (`maintain_eps`).
 */
struct AggregationReport {
    std::size_t k = 1;
    double r_non_agg = 0.0;
    double r_agg = 0.0;
    double r_avg = 0.0;
    double r_within = 0.0;
    VarianceDecomposition demand_decomp;
    VarianceDecomposition order_decomp;
    AggregationEffect effect = AggregationEffect::maintain;
    AggregationEffect effect_at_eps = AggregationEffect::maintain;
    double maintain_eps = kStrictMaintainEps;
    bool trichotomy_consistent = true;

    friend bool operator==(const AggregationReport&, const AggregationReport&) = default;
};

namespace detail {

// Does the observed move of r_agg against r_non_agg agree with the predicted effect?
[[nodiscard]] inline bool effect_matches(AggregationEffect e, double r_agg, double r_non_agg,
                                         double r_avg, double r_within, double eps) noexcept {
    switch (e) {
        case AggregationEffect::increase: return r_agg > r_non_agg;
        case AggregationEffect::decrease: return r_agg < r_non_agg;
        case AggregationEffect::maintain: {
            // |r_agg - r_non_agg| is a fraction of |r_avg - r_within|.
            const double band = eps * std::max(std::abs(r_avg), std::abs(r_within));
            return std::abs(r_agg - r_non_agg) <= band + kAbsTol * std::max(1.0, std::abs(r_agg));
        }
    }
    return false;
}

}  // namespace detail

[[nodiscard]] inline AggregationReport classify_aggregation_effect(
    const Series& orders, const Series& demands, std::size_t k, double maintain_eps = kStrictMaintainEps,
    PartitionMode mode = PartitionMode::strict) {
    require_same_length(orders, demands);

    AggregationReport r;
    r.k = k;
    r.maintain_eps = maintain_eps;
    r.demand_decomp = decompose_variance(demands, k, mode);
    r.order_decomp = decompose_variance(orders, k, mode);

    if (!(r.demand_decomp.total > 0.0))
        throw Error(ErrorCode::degenerate_demand, "demand series has zero variance");
    // Both within components zero (always the case at k=1): they add nothing to the
    // mediant, and r_within is taken equal to r_avg.
    const bool no_within = r.demand_decomp.within == 0.0 && r.order_decomp.within == 0.0;
    if (!(r.demand_decomp.within > 0.0) && !no_within)
        throw Error(ErrorCode::degenerate_subset,
                    "within-subset demand variance is zero at k=" + std::to_string(k) +
                        " (r_within undefined)");
    if (!(r.demand_decomp.between > 0.0))
        throw Error(ErrorCode::degenerate_demand,
                    "variance of demand subset means is zero at k=" + std::to_string(k) +
                        " (r_avg and r_agg undefined)");

    // Ratios from raw series, never rebuilt from rounded components.
    const std::size_t used = r.demand_decomp.subset_means.size() * k;
    const Series o = mode == PartitionMode::truncate ? orders.slice(0, used) : orders;
    const Series d = mode == PartitionMode::truncate ? demands.slice(0, used) : demands;
    r.r_non_agg = bullwhip_ratio(o, d);
    r.r_agg = aggregated_bullwhip(o, d, k);
    r.r_avg = r.order_decomp.between / r.demand_decomp.between;
    r.r_within = no_within ? r.r_avg : r.order_decomp.within / r.demand_decomp.within;

    r.effect = classify_effect(r.r_avg, r.r_within, kStrictMaintainEps);
    r.effect_at_eps = classify_effect(r.r_avg, r.r_within, maintain_eps);
    r.trichotomy_consistent =
        detail::effect_matches(r.effect, r.r_agg, r.r_non_agg, r.r_avg, r.r_within, kStrictMaintainEps) &&
        detail::effect_matches(r.effect_at_eps, r.r_agg, r.r_non_agg, r.r_avg, r.r_within, maintain_eps);
    return r;
}

/// One row of a sweep: either a report or the error that prevented it.
struct SweepEntry {
    std::size_t k = 1;
    std::optional<AggregationReport> report;
    std::optional<std::string> error;

    friend bool operator==(const SweepEntry&, const SweepEntry&) = default;
};

// Per-k failures are collected, never thrown. Output order follows k_list.
[[nodiscard]] inline std::vector<SweepEntry> sweep_aggregation(const Series& orders, const Series& demands,
                                                               const std::vector<std::size_t>& k_list,
                                                               double maintain_eps = kStrictMaintainEps,
                                                               PartitionMode mode = PartitionMode::strict) {
    std::vector<SweepEntry> out;
    out.reserve(k_list.size());
    for (std::size_t k : k_list) {
        SweepEntry e{k, std::nullopt, std::nullopt};
        try {
            e.report = classify_aggregation_effect(orders, demands, k, maintain_eps, mode);
        } catch (const Error& err) {
            e.error = err.what();
        }
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace bullwhip

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "bullwhip/core_stats.hpp"

namespace bullwhip {

/**
 * Additive split of a series into a p-periodic seasonal component and the
 * seasonally adjusted remainder.
 *
 * The seasonal index of phase q is the mean of the observations at phase q
 * minus the mean of all phase means, so the p indices sum to zero. Each
 * phase of the adjusted series then has the same mean, which makes the
 * seasonal and adjusted components exactly uncorrelated in-sample.
 */
struct SeasonalDecomposition {
    std::size_t period = 0;
    std::vector<double> indices;  // one per phase, summing to zero
    Series seasonal;
    Series adjusted;
    double var_seasonal = 0.0;
    double var_adjusted = 0.0;

    friend bool operator==(const SeasonalDecomposition&, const SeasonalDecomposition&) = default;
};

[[nodiscard]] inline std::vector<double> seasonal_indices(const Series& s, std::size_t period) {
    if (period < 2) throw Error(ErrorCode::insufficient_data, "seasonal period must be at least 2");
    if (s.size() < 2 * period)
        throw Error(ErrorCode::insufficient_data,
                    "need at least two full periods (" + std::to_string(2 * period) + " values), got " +
                        std::to_string(s.size()));
    std::vector<double> sums(period, 0.0);
    std::vector<std::size_t> counts(period, 0);
    for (std::size_t t = 0; t < s.size(); ++t) {
        sums[t % period] += s[t];
        ++counts[t % period];
    }
    for (std::size_t q = 0; q < period; ++q) sums[q] /= static_cast<double>(counts[q]);
    const double centre = mean(sums);
    for (double& v : sums) v -= centre;
    return sums;
}

/// Subtracts the periodic pattern given by `indices` from `s`.
[[nodiscard]] inline SeasonalDecomposition apply_seasonal(const Series& s, const std::vector<double>& indices) {
    const std::size_t p = indices.size();
    std::vector<double> seasonal(s.size());
    std::vector<double> adjusted(s.size());
    for (std::size_t t = 0; t < s.size(); ++t) {
        seasonal[t] = indices[t % p];
        adjusted[t] = s[t] - seasonal[t];
    }
    SeasonalDecomposition d{p, indices, Series(std::move(seasonal)), Series(std::move(adjusted)), 0.0, 0.0};
    d.var_seasonal = population_variance(d.seasonal);
    d.var_adjusted = population_variance(d.adjusted);
    return d;
}

[[nodiscard]] inline SeasonalDecomposition seasonal_decompose(const Series& s, std::size_t period) {
    return apply_seasonal(s, seasonal_indices(s, period));
}

/// Ratio once a seasonal component of variance var_seasonal is added to both sides.
[[nodiscard]] inline double seasonality_effect(double r_adjusted, double var_seasonal, double var_demand_adjusted) {
    if (!(var_demand_adjusted > 0.0))
        throw Error(ErrorCode::degenerate_demand, "seasonally adjusted demand variance must be positive");
    if (var_seasonal < 0.0) throw Error(ErrorCode::invalid_series, "seasonal variance must be non-negative");
    return (r_adjusted * var_demand_adjusted + var_seasonal) / (var_demand_adjusted + var_seasonal);
}

enum class SeasonalRelation { toward_one_from_above, toward_one_from_below, exactly_one };

[[nodiscard]] constexpr std::string_view to_string(SeasonalRelation r) noexcept {
    switch (r) {
        case SeasonalRelation::toward_one_from_above: return "toward_one_from_above";
        case SeasonalRelation::toward_one_from_below: return "toward_one_from_below";
        case SeasonalRelation::exactly_one: return "exactly_one";
    }
    return "exactly_one";
}

/**
 * r_adjusted = Var(O')/Var(D'), r_all = Var(O)/Var(D).
 *
 * `relation` is read off r_adjusted. `relation_holds` checks the measured
 * r_all against it: r_adjusted > r_all > 1, r_adjusted < r_all < 1, or
 * r_all = 1. `r_all_model` is the value implied by an uncorrelated common
 * seasonal component, which always satisfies the relation.
 */
struct SeasonalityReport {
    std::size_t period = 0;
    bool shared_seasonal = true;
    double r_adjusted = 0.0;
    double r_all = 0.0;
    double r_all_model = 0.0;
    double var_seasonal = 0.0;
    double var_demand_adjusted = 0.0;
    double var_orders_adjusted = 0.0;
    SeasonalRelation relation = SeasonalRelation::exactly_one;
    bool relation_holds = true;

    friend bool operator==(const SeasonalityReport&, const SeasonalityReport&) = default;
};

[[nodiscard]] inline SeasonalRelation classify_relation(double r_adjusted) noexcept {
    if (approx_equal(r_adjusted, 1.0)) return SeasonalRelation::exactly_one;
    return r_adjusted > 1.0 ? SeasonalRelation::toward_one_from_above : SeasonalRelation::toward_one_from_below;
}

[[nodiscard]] inline bool relation_holds(SeasonalRelation rel, double r_adjusted, double r_all, double var_seasonal) noexcept {
    // With no seasonality the two ratios coincide.
    if (var_seasonal <= kAbsTol) return approx_equal(r_adjusted, r_all);
    switch (rel) {
        case SeasonalRelation::toward_one_from_above: return r_adjusted > r_all && r_all > 1.0;
        case SeasonalRelation::toward_one_from_below: return r_adjusted < r_all && r_all < 1.0;
        case SeasonalRelation::exactly_one: return approx_equal(r_all, 1.0);
    }
    return false;
}

[[nodiscard]] inline SeasonalityReport classify_seasonality(const Series& orders, const Series& demands,
                                                            std::size_t period, bool shared_seasonal = true) {
    require_same_length(orders, demands);
    const SeasonalDecomposition dd = seasonal_decompose(demands, period);
    const SeasonalDecomposition od =
        shared_seasonal ? apply_seasonal(orders, dd.indices) : seasonal_decompose(orders, period);
    if (!(dd.var_adjusted > 0.0))
        throw Error(ErrorCode::degenerate_demand, "seasonally adjusted demand has zero variance");

    SeasonalityReport r;
    r.period = period;
    r.shared_seasonal = shared_seasonal;
    r.var_seasonal = dd.var_seasonal;
    r.var_demand_adjusted = dd.var_adjusted;
    r.var_orders_adjusted = od.var_adjusted;
    r.r_adjusted = od.var_adjusted / dd.var_adjusted;
    r.r_all = bullwhip_ratio(orders, demands);
    r.r_all_model = seasonality_effect(r.r_adjusted, r.var_seasonal, r.var_demand_adjusted);
    r.relation = classify_relation(r.r_adjusted);
    r.relation_holds = relation_holds(r.relation, r.r_adjusted, r.r_all, r.var_seasonal);
    return r;
}

}  // namespace bullwhip

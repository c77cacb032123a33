#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "bullwhip/random.hpp"
#include "bullwhip/time_aggregation.hpp"

namespace bullwhip {

/**
 * Parameters of an AR(1) demand stream feeding an order-up-to policy.
 *
 * `horizon` is the number of demand periods kept after the warm-up of
 * 10 * forecast_window samples is discarded.
 */
struct SimConfig {
    std::size_t horizon = 200;
    double phi = 0.0;
    double mu = 100.0;
    double sigma = 10.0;
    std::size_t forecast_window = 4;
    std::size_t lead_time = 2;
    std::uint64_t seed = 42;
    double seasonal_amplitude = 0.0;
    std::optional<std::size_t> seasonal_period;
    bool truncate_orders = false;  // clamp negative orders to zero; breaks conservation

    [[nodiscard]] std::size_t warmup() const noexcept { return 10 * forecast_window; }

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

inline void validate(const SimConfig& c) {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::invalid_config, what); };
    if (!(std::abs(c.phi) < 1.0)) fail("phi must lie strictly inside (-1, 1)");
    if (!(c.sigma > 0.0) || !std::isfinite(c.sigma)) fail("sigma must be positive");
    if (!std::isfinite(c.mu)) fail("mu must be finite");
    if (c.forecast_window == 0) fail("forecast_window must be positive");
    if (c.horizon < 10 * c.forecast_window) fail("horizon must be at least 10 * forecast_window");
    if (!(c.seasonal_amplitude >= 0.0) || !std::isfinite(c.seasonal_amplitude))
        fail("seasonal_amplitude must be non-negative");
    if (c.seasonal_period && *c.seasonal_period == 0) fail("seasonal_period must be positive");
}

/**
 * d_t = mu + phi (d_{t-1} - mu) + e_t, e_t ~ N(0, sigma^2), started at d = mu.
 * The first warmup() values are discarded; an optional
 * seasonal_amplitude * sin(2π t / seasonal_period) is added to the kept values
 * (t counting kept periods from 0).
 */
[[nodiscard]] inline Series gen_ar1_demand(const SimConfig& c) {
    validate(c);
    Pcg32 rng(c.seed);
    BoxMuller normal;
    double level = c.mu;
    for (std::size_t t = 0; t < c.warmup(); ++t) level = c.mu + c.phi * (level - c.mu) + c.sigma * normal(rng);

    std::vector<double> out(c.horizon);
    for (std::size_t t = 0; t < c.horizon; ++t) {
        level = c.mu + c.phi * (level - c.mu) + c.sigma * normal(rng);
        out[t] = level;
        if (c.seasonal_period && c.seasonal_amplitude > 0.0)
            out[t] += c.seasonal_amplitude *
                      std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(*c.seasonal_period));
    }
    return Series(std::move(out));
}

/**
 * Order-up-to replenishment with a moving-average forecast.
 *
 * For t >= window: forecast_t is the mean of the last `window` demands
 * (d_{t-window+1} .. d_t), the base-stock level is (lead_time + 1) * forecast_t,
 * and order_t = d_t + base_t - base_{t-1}. The result is aligned with
 * demand[window ..] and has length T - window. Orders may be negative
 * (returns) unless `truncate` is set.
 */
[[nodiscard]] inline Series order_up_to_orders(const Series& demand, std::size_t window, std::size_t lead_time,
                                               bool truncate = false) {
    if (window == 0) throw Error(ErrorCode::invalid_config, "forecast window must be positive");
    if (demand.size() <= window + lead_time)
        throw Error(ErrorCode::insufficient_data,
                    "demand length " + std::to_string(demand.size()) + " must exceed forecast_window + lead_time = " +
                        std::to_string(window + lead_time));
    const double cover = static_cast<double>(lead_time + 1);
    const auto w = static_cast<double>(window);

    // Window sum recomputed each period; no running total to drift.
    auto base_at = [&](std::size_t t) {
        double sum = 0.0;
        for (std::size_t i = t + 1 - window; i <= t; ++i) sum += demand[i];
        return cover * sum / w;
    };

    std::vector<double> orders;
    orders.reserve(demand.size() - window);
    double prev_base = base_at(window - 1);
    for (std::size_t t = window; t < demand.size(); ++t) {
        const double base = base_at(t);
        double o = demand[t] + base - prev_base;
        if (truncate && o < 0.0) o = 0.0;
        orders.push_back(o);
        prev_base = base;
    }
    return Series(std::move(orders));
}

struct SimRun {
    Series demand;  // aligned with orders
    Series orders;
    SimConfig config;
    std::size_t warmup_dropped = 0;  // AR burn-in plus the forecast window consumed before the first order

    friend bool operator==(const SimRun&, const SimRun&) = default;
};

[[nodiscard]] inline SimRun simulate(const SimConfig& c) {
    const Series raw = gen_ar1_demand(c);
    Series orders = order_up_to_orders(raw, c.forecast_window, c.lead_time, c.truncate_orders);
    Series demand = raw.slice(c.forecast_window, raw.size() - c.forecast_window);
    return SimRun{std::move(demand), std::move(orders), c, c.warmup() + c.forecast_window};
}

struct RegimeCounts {
    std::size_t k = 1;
    std::size_t increase = 0;
    std::size_t decrease = 0;
    std::size_t maintain = 0;
    std::size_t errors = 0;

    friend bool operator==(const RegimeCounts&, const RegimeCounts&) = default;
};

/**
 * Runs `reps` simulations (replication r uses seed config.seed + r) and tallies
 * the time-aggregation effect for each k. Simulations whose length is not a
 * multiple of k are truncated to the largest multiple.
 */
[[nodiscard]] inline std::vector<RegimeCounts> monte_carlo_regimes(const SimConfig& config,
                                                                   const std::vector<std::size_t>& k_list,
                                                                   std::size_t reps,
                                                                   double maintain_eps = kStrictMaintainEps) {
    validate(config);
    if (reps == 0) throw Error(ErrorCode::invalid_config, "reps must be at least 1");
    std::vector<RegimeCounts> table;
    for (std::size_t k : k_list) table.push_back(RegimeCounts{k, 0, 0, 0, 0});

    for (std::size_t r = 0; r < reps; ++r) {
        SimConfig c = config;
        c.seed = config.seed + r;
        const SimRun run = simulate(c);
        for (auto& row : table) {
            try {
                const auto rep = classify_aggregation_effect(run.orders, run.demand, row.k, maintain_eps,
                                                             PartitionMode::truncate);
                switch (rep.effect_at_eps) {
                    case AggregationEffect::increase: ++row.increase; break;
                    case AggregationEffect::decrease: ++row.decrease; break;
                    case AggregationEffect::maintain: ++row.maintain; break;
                }
            } catch (const Error&) {
                ++row.errors;
            }
        }
    }
    return table;
}

}  // namespace bullwhip

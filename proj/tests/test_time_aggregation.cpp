#include <gtest/gtest.h>

#include <random>

#include "bullwhip/time_aggregation.hpp"
#include "oracles.hpp"

using namespace bullwhip;

namespace {

const Series kOrders{8, 7, 9, 5, 10, 10, 10, 5, 9, 7, 5, 9};
const Series kDemand{9, 8, 5, 9, 9, 8, 10, 8, 8, 10, 5, 9};
const Series kTable5{9, 5, 8, 6, 7, 10};

}  // namespace

TEST(AggregateSeries, Table5) {
    const Series a2 = aggregate_series(kTable5, 2);
    EXPECT_EQ(a2, (Series{14, 14, 17}));
    EXPECT_NEAR(population_variance(a2), 2.0, 1e-12);
    EXPECT_NEAR(decompose_variance(kTable5, 2).between, 0.5, 1e-12);

    const Series a3 = aggregate_series(kTable5, 3);
    EXPECT_EQ(a3, (Series{22, 23}));
    EXPECT_NEAR(population_variance(a3), 0.25, 1e-12);
    EXPECT_NEAR(decompose_variance(kTable5, 3).between, 1.0 / 36.0, 1e-12);

    EXPECT_EQ(aggregate_series(kTable5, 1), kTable5);
    EXPECT_THROW((void)aggregate_series(kTable5, 4), Error);
}

TEST(AggregateSeries, KSquaredLaw) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> m_dist(2, 15);
    std::uniform_int_distribution<std::size_t> k_dist(1, 8);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t k = k_dist(rng);
        const Series s = oracle::random_series(k * m_dist(rng), rng);
        const double kk = static_cast<double>(k * k);
        EXPECT_TRUE(approx_equal(population_variance(aggregate_series(s, k)), kk * decompose_variance(s, k).between));
    }
}

TEST(AggregatedBullwhip, Table6) {
    EXPECT_NEAR(aggregated_bullwhip(kOrders, kDemand, 2), 19.0 / 13.0, 1e-12);
    EXPECT_NEAR(aggregated_bullwhip(kOrders, kDemand, 3), 9.0 / 11.0, 1e-12);
    EXPECT_NEAR(aggregated_bullwhip(kOrders, kDemand, 4), 31.0 / 13.0, 1e-12);
}

TEST(AggregatedBullwhip, AggregationCanRemoveAllDemandVariance) {
    // Subset means 7.33 and 7.33: aggregated demand is flat.
    const Series demand{9, 5, 8, 6, 7, 9};
    try {
        (void)aggregated_bullwhip(kTable5, demand, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::degenerate_demand);
        EXPECT_NE(std::string(e.what()).find("aggregated"), std::string::npos);
    }
}

TEST(ClassifyAggregationEffect, Table6) {
    const auto k2 = classify_aggregation_effect(kOrders, kDemand, 2);
    EXPECT_NEAR(k2.r_non_agg, 131.0 / 89.0, 1e-12);
    EXPECT_NEAR(k2.r_within, 31.0 / 21.0, 1e-12);
    EXPECT_NEAR(k2.r_avg, 19.0 / 13.0, 1e-12);
    EXPECT_NEAR(k2.r_agg, k2.r_avg, 1e-12);
    EXPECT_EQ(k2.effect, AggregationEffect::decrease);
    EXPECT_TRUE(k2.trichotomy_consistent);

    const auto k2_loose = classify_aggregation_effect(kOrders, kDemand, 2, 0.02);
    EXPECT_EQ(k2_loose.effect, AggregationEffect::decrease);
    EXPECT_EQ(k2_loose.effect_at_eps, AggregationEffect::maintain);
    EXPECT_TRUE(k2_loose.trichotomy_consistent);

    const auto k3 = classify_aggregation_effect(kOrders, kDemand, 3);
    EXPECT_EQ(k3.effect, AggregationEffect::decrease);
    EXPECT_LT(k3.r_agg, k3.r_non_agg);

    const auto k4 = classify_aggregation_effect(kOrders, kDemand, 4);
    EXPECT_NEAR(k4.r_within, 1.4, 1e-12);
    EXPECT_EQ(k4.effect, AggregationEffect::increase);
    EXPECT_GT(k4.r_agg, k4.r_non_agg);
}

TEST(ClassifyAggregationEffect, EqualRatiosMaintain) {
    // Orders = 3 * demand: every ratio is 9.
    std::vector<double> scaled;
    for (double x : kDemand) scaled.push_back(3.0 * x);
    const auto r = classify_aggregation_effect(Series(scaled), kDemand, 3);
    EXPECT_EQ(r.effect, AggregationEffect::maintain);
    EXPECT_NEAR(r.r_agg, 9.0, 1e-12);
    EXPECT_NEAR(r.r_non_agg, 9.0, 1e-12);
}

TEST(ClassifyAggregationEffect, DegenerateDenominators) {
    // Demand subsets are all flat: within-subset demand variance vanishes.
    const Series flat_within{1, 1, 2, 2, 3, 3};
    try {
        (void)classify_aggregation_effect(kTable5, flat_within, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::degenerate_subset);
    }
    // Subset means of demand are equal: between-subset variance vanishes.
    try {
        (void)classify_aggregation_effect(kTable5, Series{9, 5, 8, 6, 7, 9}, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::degenerate_demand);
    }
}

TEST(ClassifyAggregationEffect, TruncateMode) {
    const Series o{8, 7, 9, 5, 10, 10, 10, 5, 9, 7, 5, 9, 4};
    const Series d{9, 8, 5, 9, 9, 8, 10, 8, 8, 10, 5, 9, 1};
    EXPECT_THROW((void)classify_aggregation_effect(o, d, 3), Error);
    const auto r = classify_aggregation_effect(o, d, 3, kStrictMaintainEps, PartitionMode::truncate);
    EXPECT_EQ(r, classify_aggregation_effect(kOrders, kDemand, 3));
}

TEST(SweepAggregation, Table6Column) {
    const auto sweep = sweep_aggregation(kOrders, kDemand, {2, 3, 4, 5});
    ASSERT_EQ(sweep.size(), 4u);
    EXPECT_NEAR(sweep[0].report->r_agg, 19.0 / 13.0, 1e-12);
    EXPECT_NEAR(sweep[1].report->r_agg, 9.0 / 11.0, 1e-12);
    EXPECT_NEAR(sweep[2].report->r_agg, 31.0 / 13.0, 1e-12);
    EXPECT_FALSE(sweep[3].report.has_value());
    ASSERT_TRUE(sweep[3].error.has_value());
    EXPECT_NE(sweep[3].error->find("IndivisibleLength"), std::string::npos);
}

TEST(SweepAggregation, KOneIsNoAggregation) {
    const auto sweep = sweep_aggregation(kOrders, kDemand, {1});
    ASSERT_EQ(sweep.size(), 1u);
    ASSERT_TRUE(sweep[0].report.has_value());
    EXPECT_DOUBLE_EQ(sweep[0].report->r_agg, sweep[0].report->r_non_agg);
    EXPECT_EQ(sweep[0].report->effect, AggregationEffect::maintain);
}

TEST(SweepAggregation, ConstantDemandIsDegenerateEverywhere) {
    const Series flat(std::vector<double>(12, 4.0));
    for (const auto& e : sweep_aggregation(kOrders, flat, {1, 2, 3, 4, 6})) {
        ASSERT_TRUE(e.error.has_value());
        EXPECT_EQ(e.error->rfind("DegenerateDemand", 0), 0u);
    }
}

TEST(ClassifyAggregationEffect, RandomTrichotomyAndMediant) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> m_dist(2, 20);
    std::uniform_int_distribution<std::size_t> k_dist(2, 6);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t k = k_dist(rng);
        const std::size_t t = k * m_dist(rng);
        const Series d = oracle::random_series(t, rng, 100.0, 10.0);
        const Series o = oracle::random_series(t, rng, 100.0, 15.0);
        const auto r = classify_aggregation_effect(o, d, k);
        EXPECT_TRUE(r.trichotomy_consistent);
        EXPECT_TRUE(approx_equal(r.r_agg, r.r_avg));
        const double lo = std::min(r.r_within, r.r_avg);
        const double hi = std::max(r.r_within, r.r_avg);
        EXPECT_GE(r.r_non_agg, lo * (1 - 1e-12));
        EXPECT_LE(r.r_non_agg, hi * (1 + 1e-12));
    }
}

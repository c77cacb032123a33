#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "bullwhip/error.hpp"
#include "bullwhip/series.hpp"
#include "bullwhip/tolerance.hpp"

namespace bullwhip {

/// Divisor used for variances: n (population) or n - 1 (sample).
enum class Normalization { population, sample };

/// What to do when the subset size does not divide the series length.
enum class PartitionMode { strict, truncate };

[[nodiscard]] inline double mean(std::span<const double> xs) noexcept {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

/**
 * Two-pass variance: mean first, then the sum of squared deviations.
 * Population normalization divides by n; sample normalization by n - 1
 * (and returns 0 for a single observation).
 */
[[nodiscard]] inline double variance(std::span<const double> xs,
                                     Normalization norm = Normalization::population) noexcept {
    const std::size_t n = xs.size();
    if (n < 2) return 0.0;
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    const double denom = norm == Normalization::population ? static_cast<double>(n)
                                                           : static_cast<double>(n - 1);
    return ss / denom;
}

[[nodiscard]] inline double population_variance(const Series& s) noexcept {
    return variance(s.values());
}

/// Layout of an equal-size contiguous partition.
struct Partition {
    std::size_t subsets = 0;      // M
    std::size_t subset_size = 0;  // k
    std::size_t dropped = 0;      // trailing values discarded in truncate mode

    friend bool operator==(const Partition&, const Partition&) = default;
};

struct PartitionResult {
    Partition layout;
    std::vector<Series> subsets;
};

/// Layout for a series of length `length` split into subsets of size `k`.
[[nodiscard]] inline Partition partition_layout(std::size_t length, std::size_t k,
                                                PartitionMode mode = PartitionMode::strict) {
    if (k == 0) throw Error(ErrorCode::indivisible_length, "subset size k must be positive");
    const std::size_t rem = length % k;
    if (rem != 0 && mode == PartitionMode::strict)
        throw Error(ErrorCode::indivisible_length,
                    "series length " + std::to_string(length) + " is not divisible by k=" +
                        std::to_string(k));
    if (length / k == 0)
        throw Error(ErrorCode::indivisible_length,
                    "k=" + std::to_string(k) + " exceeds series length " + std::to_string(length));
    return {length / k, k, rem};
}

/// Splits `s` into M = T/k contiguous subsets in order: subset j holds elements jk .. jk+k-1.
[[nodiscard]] inline PartitionResult partition(const Series& s, std::size_t k,
                                               PartitionMode mode = PartitionMode::strict) {
    PartitionResult out{partition_layout(s.size(), k, mode), {}};
    out.subsets.reserve(out.layout.subsets);
    for (std::size_t j = 0; j < out.layout.subsets; ++j) out.subsets.push_back(s.slice(j * k, k));
    return out;
}

/**
 * Law-of-total-variance split of one series under a partition:
 * total = within (mean of subset variances) + between (variance of subset means).
 */
struct VarianceDecomposition {
    double total = 0.0;
    double within = 0.0;
    double between = 0.0;
    std::vector<double> subset_variances;
    std::vector<double> subset_means;

    friend bool operator==(const VarianceDecomposition&, const VarianceDecomposition&) = default;
};

[[nodiscard]] inline VarianceDecomposition decompose_variance(
    const Series& s, std::size_t k, PartitionMode mode = PartitionMode::strict) {
    const Partition layout = partition_layout(s.size(), k, mode);
    const auto used = s.values().first(layout.subsets * k);

    VarianceDecomposition d;
    d.subset_variances.reserve(layout.subsets);
    d.subset_means.reserve(layout.subsets);
    for (std::size_t j = 0; j < layout.subsets; ++j) {
        const auto sub = used.subspan(j * k, k);
        d.subset_variances.push_back(variance(sub));
        d.subset_means.push_back(mean(sub));
    }
    d.total = variance(used);
    d.within = mean(d.subset_variances);
    d.between = variance(d.subset_means);
    return d;
}

inline void require_same_length(const Series& orders, const Series& demands) {
    if (orders.size() != demands.size())
        throw Error(ErrorCode::length_mismatch,
                    "orders have " + std::to_string(orders.size()) + " values, demands have " +
                        std::to_string(demands.size()));
}

/// Var(orders) / Var(demands), both population variances.
[[nodiscard]] inline double bullwhip_ratio(const Series& orders, const Series& demands) {
    require_same_length(orders, demands);
    const double vd = population_variance(demands);
    if (!(vd > 0.0)) throw Error(ErrorCode::degenerate_demand, "demand series has zero variance");
    return population_variance(orders) / vd;
}

/// Per-subset bullwhip ratios r_j with demand-variance weights w_j.
struct SubsetBullwhip {
    std::vector<double> subset_ratios;
    std::vector<double> weights;
    double weighted_ratio = 0.0;

    friend bool operator==(const SubsetBullwhip&, const SubsetBullwhip&) = default;
};

// The weighted sum of subset ratios equals within(orders) / within(demands).
[[nodiscard]] inline SubsetBullwhip subset_ratios_weighted(const Series& orders, const Series& demands,
                                                           std::size_t k,
                                                           PartitionMode mode = PartitionMode::strict) {
    require_same_length(orders, demands);
    const auto od = decompose_variance(orders, k, mode);
    const auto dd = decompose_variance(demands, k, mode);

    const double demand_sum = std::accumulate(dd.subset_variances.begin(), dd.subset_variances.end(), 0.0);
    SubsetBullwhip out;
    for (std::size_t j = 0; j < dd.subset_variances.size(); ++j) {
        const double vd = dd.subset_variances[j];
        if (!(vd > 0.0))
            throw Error(ErrorCode::degenerate_subset,
                        "demand subset " + std::to_string(j) + " has zero variance")
                .with_subset(j);
        out.subset_ratios.push_back(od.subset_variances[j] / vd);
        out.weights.push_back(vd / demand_sum);
    }
    for (std::size_t j = 0; j < out.weights.size(); ++j)
        out.weighted_ratio += out.subset_ratios[j] * out.weights[j];
    return out;
}

}  // namespace bullwhip

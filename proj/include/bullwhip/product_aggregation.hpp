#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bullwhip/core_stats.hpp"
#include "bullwhip/matrix.hpp"

namespace bullwhip {

/**
 * N products observed over a common horizon of T periods.
 *
 * demand[n] and orders[n] belong to products[n]. Identifiers are unique and
 * all 2N series share one length.
 */
class PanelDataset {
public:
    PanelDataset(std::vector<std::string> products, std::vector<Series> demand, std::vector<Series> orders)
        : products_(std::move(products)), demand_(std::move(demand)), orders_(std::move(orders)) {
        if (products_.empty()) throw Error(ErrorCode::empty_dataset, "panel holds no products");
        if (demand_.size() != products_.size() || orders_.size() != products_.size())
            throw Error(ErrorCode::length_mismatch, "one demand and one order series per product required");
        if (std::set<std::string>(products_.begin(), products_.end()).size() != products_.size())
            throw Error(ErrorCode::duplicate_row, "product identifiers must be unique");
        const std::size_t t = demand_.front().size();
        for (std::size_t n = 0; n < products_.size(); ++n) {
            if (demand_[n].size() != t || orders_[n].size() != t)
                throw Error(ErrorCode::length_mismatch,
                            "product '" + products_[n] + "' does not span the common horizon of " +
                                std::to_string(t) + " periods");
        }
    }

    [[nodiscard]] std::size_t products_count() const noexcept { return products_.size(); }
    [[nodiscard]] std::size_t periods() const noexcept { return demand_.front().size(); }
    [[nodiscard]] const std::vector<std::string>& products() const noexcept { return products_; }
    [[nodiscard]] const std::vector<Series>& demand() const noexcept { return demand_; }
    [[nodiscard]] const std::vector<Series>& orders() const noexcept { return orders_; }

    friend bool operator==(const PanelDataset&, const PanelDataset&) = default;

private:
    std::vector<std::string> products_;
    std::vector<Series> demand_;
    std::vector<Series> orders_;
};

/// Population covariance matrix: entry (i,j) = (1/T) Σ_t (x_ti - mean_i)(x_tj - mean_j).
[[nodiscard]] inline Matrix covariance_matrix(const std::vector<Series>& series) {
    if (series.empty()) throw Error(ErrorCode::empty_dataset, "covariance of zero series");
    const std::size_t n = series.size();
    const std::size_t t = series.front().size();
    for (const auto& s : series)
        if (s.size() != t) throw Error(ErrorCode::length_mismatch, "covariance requires series of common length");

    std::vector<double> means(n);
    for (std::size_t i = 0; i < n; ++i) means[i] = mean(series[i].values());

    Matrix cov(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < t; ++k) acc += (series[i][k] - means[i]) * (series[j][k] - means[j]);
            cov(i, j) = cov(j, i) = acc / static_cast<double>(t);
        }
    }
    return cov;
}

/// Periodwise sum across products.
[[nodiscard]] inline Series sum_series(const std::vector<Series>& series) {
    std::vector<double> out(series.front().size(), 0.0);
    for (const auto& s : series)
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += s[k];
    return Series(std::move(out));
}

struct ProductAggregate {
    Series orders_total;
    Series demand_total;
    double r_add = 0.0;
};

[[nodiscard]] inline ProductAggregate aggregate_products(const PanelDataset& panel) {
    ProductAggregate out{sum_series(panel.orders()), sum_series(panel.demand()), 0.0};
    const double vd = population_variance(out.demand_total);
    if (!(vd > 0.0)) throw Error(ErrorCode::degenerate_demand, "aggregated demand has zero variance");
    out.r_add = population_variance(out.orders_total) / vd;
    return out;
}

/**
 * Individual ratios r_n, demand-variance weights w_n, their inner product r·w,
 * and the aggregated ratio (Σ var_O)/(Σ var_D). For uncorrelated products the
 * last two coincide and sit within [min r_n, max r_n].
 */
struct ProductRatios {
    std::vector<double> ratios;
    std::vector<double> weights;
    double weighted_ratio = 0.0;
    double exact_aggregated = 0.0;

    friend bool operator==(const ProductRatios&, const ProductRatios&) = default;
};

[[nodiscard]] inline ProductRatios weighted_average_ratio(const std::vector<double>& var_orders,
                                                          const std::vector<double>& var_demand) {
    if (var_orders.size() != var_demand.size())
        throw Error(ErrorCode::length_mismatch, "one order variance per demand variance required");
    if (var_demand.empty()) throw Error(ErrorCode::empty_dataset, "no products");
    for (std::size_t n = 0; n < var_demand.size(); ++n)
        if (!(var_demand[n] > 0.0))
            throw Error(ErrorCode::degenerate_demand, "product " + std::to_string(n) + " has non-positive demand variance");

    const double sum_d = std::accumulate(var_demand.begin(), var_demand.end(), 0.0);
    const double sum_o = std::accumulate(var_orders.begin(), var_orders.end(), 0.0);
    ProductRatios out;
    for (std::size_t n = 0; n < var_demand.size(); ++n) {
        out.ratios.push_back(var_orders[n] / var_demand[n]);
        out.weights.push_back(var_demand[n] / sum_d);
        out.weighted_ratio += out.ratios.back() * out.weights.back();
    }
    out.exact_aggregated = sum_o / sum_d;
    return out;
}

/// Order and demand covariance matrices with their ascending spectra.
struct CovariancePair {
    Matrix sigma_orders;
    Matrix sigma_demand;
    std::vector<double> eigen_orders;
    std::vector<double> eigen_demand;

    friend bool operator==(const CovariancePair&, const CovariancePair&) = default;
};

[[nodiscard]] inline CovariancePair make_covariance_pair(Matrix sigma_orders, Matrix sigma_demand) {
    if (sigma_orders.size() != sigma_demand.size())
        throw Error(ErrorCode::length_mismatch, "covariance matrices differ in dimension");
    CovariancePair p{std::move(sigma_orders), std::move(sigma_demand), {}, {}};
    p.eigen_orders = symmetric_eigenvalues(p.sigma_orders);
    p.eigen_demand = symmetric_eigenvalues(p.sigma_demand);
    return p;
}

// λ_min(Σ_D) at or below this fraction of λ_max(Σ_D) counts as zero.
inline constexpr double kEigenZeroThreshold = 1e-10;

/// Range for r_add when products may be correlated: [λ_min^O/λ_max^D, λ_max^O/λ_min^D].
struct EigenBounds {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    bool upper_unbounded = false;
    std::optional<double> r_add;
    bool contains_r_add = true;

    friend bool operator==(const EigenBounds&, const EigenBounds&) = default;
};

[[nodiscard]] inline EigenBounds eigen_bounds(const CovariancePair& pair, std::optional<double> r_add = std::nullopt) {
    const double lmin_o = pair.eigen_orders.front();
    const double lmax_o = pair.eigen_orders.back();
    const double lmin_d = pair.eigen_demand.front();
    const double lmax_d = pair.eigen_demand.back();
    if (!(lmax_d > 0.0)) throw Error(ErrorCode::degenerate_demand, "demand covariance matrix is zero");

    EigenBounds b;
    b.lower = lmin_o / lmax_d;
    b.upper_unbounded = lmin_d <= kEigenZeroThreshold * lmax_d;
    b.upper = b.upper_unbounded ? std::numeric_limits<double>::infinity() : lmax_o / lmin_d;
    b.r_add = r_add;
    if (r_add) {
        const double slack = kRelTol * std::max(1.0, std::abs(*r_add));
        b.contains_r_add = *r_add >= b.lower - slack && (b.upper_unbounded || *r_add <= b.upper + slack);
    }
    return b;
}

/// Everything known about an N-product panel: individual and aggregated ratios and both bound families.
struct ProductReport {
    std::vector<std::string> products;
    ProductRatios ratios;  // computed from the diagonal variances
    CovariancePair covariance;
    double r_add = 0.0;
    EigenBounds bounds;
    // r_add outside [min r_n, max r_n]; needs nonzero cross-covariances.
    bool escapes_uncorrelated_bounds = false;

    friend bool operator==(const ProductReport&, const ProductReport&) = default;
};

[[nodiscard]] inline ProductReport product_report(const PanelDataset& panel) {
    ProductReport rep;
    rep.products = panel.products();
    Matrix sigma_o = covariance_matrix(panel.orders());
    Matrix sigma_d = covariance_matrix(panel.demand());
    rep.ratios = weighted_average_ratio(sigma_o.diagonal_values(), sigma_d.diagonal_values());
    rep.r_add = aggregate_products(panel).r_add;
    rep.covariance = make_covariance_pair(std::move(sigma_o), std::move(sigma_d));
    rep.bounds = eigen_bounds(rep.covariance, rep.r_add);

    const auto [lo, hi] = std::minmax_element(rep.ratios.ratios.begin(), rep.ratios.ratios.end());
    const double slack = kRelTol * std::max(1.0, std::abs(rep.r_add));
    rep.escapes_uncorrelated_bounds = rep.r_add < *lo - slack || rep.r_add > *hi + slack;
    return rep;
}

}  // namespace bullwhip

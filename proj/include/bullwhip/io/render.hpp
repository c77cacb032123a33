#pragma once

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>

#include "bullwhip/io/report.hpp"

namespace bullwhip::io {

enum class Format { json, table };

/// Two-decimal display value. Display only; never fed back into computation.
[[nodiscard]] inline std::string fixed2(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    if (s == "-0.00") s = "0.00";
    return s;
}

namespace render_detail {

inline std::string join2(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += "  ";
        out += fixed2(xs[i]);
    }
    return out;
}

inline void decomposition_rows(std::ostream& out, const VarianceDecomposition& d) {
    out << "  subset variance  " << join2(d.subset_variances) << '\n';
    out << "  subset mean      " << join2(d.subset_means) << '\n';
}

inline void table(std::ostream& out, const DecomposeReport& r) {
    out << "Variance decomposition (population variance)\n";
    for (const auto& e : r.entries) {
        const auto& d = e.decomposition;
        out << e.product << ' ' << e.series << " k=" << e.k << " M=" << d.subset_means.size() << "  within "
            << fixed2(d.within) << " between " << fixed2(d.between) << " total " << fixed2(d.total) << '\n';
        decomposition_rows(out, d);
    }
}

inline void table(std::ostream& out, const TimeAggReport& r) {
    out << "Time aggregation\n";
    for (const auto& p : r.products) {
        for (const auto& e : p.sweep) {
            out << p.product << " k=" << e.k;
            if (!e.report) {
                out << "  error " << e.error.value_or("unknown") << '\n';
                continue;
            }
            const auto& a = *e.report;
            out << " M=" << a.demand_decomp.subset_means.size() << '\n';
            out << "  Variance of non-aggregated orders " << fixed2(a.order_decomp.total) << '\n';
            out << "  Variance of non-aggregated demands " << fixed2(a.demand_decomp.total) << '\n';
            out << "  Expectation of subset variances for orders " << fixed2(a.order_decomp.within) << '\n';
            out << "  Expectation of subset variances for demands " << fixed2(a.demand_decomp.within) << '\n';
            out << "  Variance of the subset means for orders " << fixed2(a.order_decomp.between) << '\n';
            out << "  Variance of the subset means for demands " << fixed2(a.demand_decomp.between) << '\n';
            out << "  R_non_agg " << fixed2(a.r_non_agg) << '\n';
            out << "  R_within " << fixed2(a.r_within) << '\n';
            out << "  R_avg " << fixed2(a.r_avg) << '\n';
            out << "  R_agg " << fixed2(a.r_agg) << '\n';
            out << "  effect " << to_string(a.effect) << " (strict), " << to_string(a.effect_at_eps)
                << " (maintain-eps " << a.maintain_eps << ")"
                << (a.trichotomy_consistent ? "" : "  WARNING: ratios disagree with predicted effect") << '\n';
        }
    }
}

inline void table(std::ostream& out, const ProductReport& r) {
    const auto& diag_o = r.covariance.sigma_orders.diagonal_values();
    const auto& diag_d = r.covariance.sigma_demand.diagonal_values();
    std::size_t width = 7;
    for (const auto& p : r.products) width = std::max(width, p.size());

    out << "Product aggregation (N=" << r.products.size() << ")\n";
    out << std::left << std::setw(static_cast<int>(width)) << "product" << std::right << std::setw(10) << "Var(O)"
        << std::setw(10) << "Var(D)" << std::setw(8) << "r_n" << std::setw(8) << "w_n" << '\n';
    for (std::size_t n = 0; n < r.products.size(); ++n) {
        out << std::left << std::setw(static_cast<int>(width)) << r.products[n] << std::right << std::setw(10)
            << fixed2(diag_o[n]) << std::setw(10) << fixed2(diag_d[n]) << std::setw(8) << fixed2(r.ratios.ratios[n])
            << std::setw(8) << fixed2(r.ratios.weights[n]) << '\n';
    }
    out << "r.w " << fixed2(r.ratios.weighted_ratio) << '\n';
    out << "r_add " << fixed2(r.r_add) << '\n';
    out << "eigen bounds [" << fixed2(r.bounds.lower) << ", " << (r.bounds.upper_unbounded ? "unbounded" : fixed2(r.bounds.upper))
        << "]" << (r.bounds.contains_r_add ? "" : "  WARNING: r_add outside eigen bounds") << '\n';
    out << "eigenvalues orders  " << join2(r.covariance.eigen_orders) << '\n';
    out << "eigenvalues demand  " << join2(r.covariance.eigen_demand) << '\n';
    out << "escapes uncorrelated bounds " << (r.escapes_uncorrelated_bounds ? "yes" : "no") << '\n';
}

inline void table(std::ostream& out, const SeasonalityReports& r) {
    out << "Seasonality\n";
    for (const auto& e : r.entries) {
        const auto& s = e.report;
        out << e.product << " period=" << s.period << (s.shared_seasonal ? " shared seasonal" : " per-series seasonal")
            << '\n';
        out << "  Var(S) " << fixed2(s.var_seasonal) << '\n';
        out << "  Var(D') " << fixed2(s.var_demand_adjusted) << '\n';
        out << "  Var(O') " << fixed2(s.var_orders_adjusted) << '\n';
        out << "  r_adjusted " << fixed2(s.r_adjusted) << '\n';
        out << "  r_all " << fixed2(s.r_all) << '\n';
        out << "  r_all (common seasonal model) " << fixed2(s.r_all_model) << '\n';
        out << "  relation " << to_string(s.relation) << (s.relation_holds ? " (holds)" : " (does not hold in sample)")
            << '\n';
    }
}

inline void table(std::ostream& out, const SimulateReport& r) {
    out << "Simulation  seed=" << r.config.seed << " horizon=" << r.config.horizon << " phi=" << r.config.phi
        << " window=" << r.config.forecast_window << " lead_time=" << r.config.lead_time << '\n';
    out << "  periods " << r.demand.size() << " (dropped " << r.warmup_dropped << ")\n";
    out << "  Var(D) " << fixed2(r.var_demand) << '\n';
    out << "  Var(O) " << fixed2(r.var_orders) << '\n';
    out << "  bullwhip ratio " << fixed2(r.bullwhip_ratio) << '\n';
    if (!r.regimes.empty()) {
        out << std::right << std::setw(6) << "k" << std::setw(10) << "increase" << std::setw(10) << "decrease"
            << std::setw(10) << "maintain" << std::setw(8) << "errors" << '\n';
        for (const auto& row : r.regimes)
            out << std::setw(6) << row.k << std::setw(10) << row.increase << std::setw(10) << row.decrease
                << std::setw(10) << row.maintain << std::setw(8) << row.errors << '\n';
    }
}

}  // namespace render_detail

[[nodiscard]] inline std::string render_report(const Report& r, Format format) {
    if (format == Format::json) return nlohmann::json(r).dump(2) + "\n";
    std::ostringstream out;
    std::visit([&](const auto& p) { render_detail::table(out, p); }, r.payload);
    return out.str();
}

[[nodiscard]] inline Report parse_report(std::string_view text) {
    try {
        return nlohmann::json::parse(text).get<Report>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::malformed_report, e.what());
    }
}

}  // namespace bullwhip::io

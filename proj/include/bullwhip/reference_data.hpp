#pragma once

#include <string>
#include <vector>

#include "bullwhip/io/render.hpp"
#include "bullwhip/time_aggregation.hpp"

namespace bullwhip::reference {

// Worked examples with published two-decimal results.

/// Six demands used for the variance-decomposition table (Table 4).
inline const Series& table4_demand() {
    static const Series s{9, 5, 8, 6, 7, 9};
    return s;
}

/// Six orders used for the aggregated-vs-averaged variance table (Table 5).
inline const Series& table5_orders() {
    static const Series s{9, 5, 8, 6, 7, 10};
    return s;
}

/// Twelve orders and demands used for the aggregation-effect table (Table 6).
inline const Series& table6_orders() {
    static const Series s{8, 7, 9, 5, 10, 10, 10, 5, 9, 7, 5, 9};
    return s;
}
inline const Series& table6_demand() {
    static const Series s{9, 8, 5, 9, 9, 8, 10, 8, 8, 10, 5, 9};
    return s;
}

struct TableCheck {
    std::string name;
    bool pass = true;
    std::vector<std::string> mismatches;
};

namespace detail {

inline void expect2(TableCheck& c, const std::string& what, double value, const std::string& printed) {
    if (io::fixed2(value) != printed)
        c.mismatches.push_back(what + ": got " + io::fixed2(value) + ", expected " + printed);
}

inline void expect3(TableCheck& c, const std::string& what, double value, const std::string& printed) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", value);
    if (printed != buf) c.mismatches.push_back(what + ": got " + buf + ", expected " + printed);
}

}  // namespace detail

/// Recomputes every summary cell of the three tables and compares against the printed values.
[[nodiscard]] inline std::vector<TableCheck> replicate_tables() {
    std::vector<TableCheck> out;

    {
        TableCheck c{"Table 4", true, {}};
        const Series& d = table4_demand();
        detail::expect2(c, "Var(D)", population_variance(d), "2.22");
        struct Row {
            std::size_t k;
            const char* within;
            const char* between;
        };
        for (const Row& row : {Row{1, "0.00", "2.22"}, Row{2, "2.00", "0.22"}, Row{3, "2.22", "0.00"}, Row{6, "2.22", "0.00"}}) {
            const auto dec = decompose_variance(d, row.k);
            const std::string tag = "k=" + std::to_string(row.k);
            detail::expect2(c, tag + " within", dec.within, row.within);
            detail::expect2(c, tag + " between", dec.between, row.between);
            detail::expect2(c, tag + " total", dec.total, "2.22");
        }
        const auto k2 = decompose_variance(d, 2);
        detail::expect2(c, "k=2 subset variance 1", k2.subset_variances[0], "4.00");
        detail::expect2(c, "k=2 subset mean 3", k2.subset_means[2], "8.00");
        const auto k3 = decompose_variance(d, 3);
        detail::expect2(c, "k=3 subset variance 1", k3.subset_variances[0], "2.89");
        detail::expect2(c, "k=3 subset variance 2", k3.subset_variances[1], "1.56");
        detail::expect2(c, "k=3 subset mean 1", k3.subset_means[0], "7.33");
        c.pass = c.mismatches.empty();
        out.push_back(std::move(c));
    }

    {
        TableCheck c{"Table 5", true, {}};
        const Series& o = table5_orders();
        const Series a2 = aggregate_series(o, 2);
        const Series a3 = aggregate_series(o, 3);
        if (a2 != Series{14, 14, 17}) c.mismatches.emplace_back("k=2 aggregated orders differ from 14, 14, 17");
        if (a3 != Series{22, 23}) c.mismatches.emplace_back("k=3 aggregated orders differ from 22, 23");
        detail::expect3(c, "k=2 Var(aggregated)", population_variance(a2), "2.000");
        detail::expect3(c, "k=2 Var(means)", decompose_variance(o, 2).between, "0.500");
        detail::expect3(c, "k=3 Var(aggregated)", population_variance(a3), "0.250");
        detail::expect3(c, "k=3 Var(means)", decompose_variance(o, 3).between, "0.028");
        c.pass = c.mismatches.empty();
        out.push_back(std::move(c));
    }

    {
        TableCheck c{"Table 6", true, {}};
        const Series& o = table6_orders();
        const Series& d = table6_demand();
        detail::expect2(c, "Var(O)", population_variance(o), "3.64");
        detail::expect2(c, "Var(D)", population_variance(d), "2.47");
        struct Row {
            std::size_t k;
            const char* r_within;
            const char* r_agg;
            AggregationEffect effect;
        };
        for (const Row& row : {Row{2, "1.48", "1.46", AggregationEffect::decrease},
                               Row{3, "1.56", "0.82", AggregationEffect::decrease},
                               Row{4, "1.40", "2.38", AggregationEffect::increase}}) {
            const auto rep = classify_aggregation_effect(o, d, row.k);
            const std::string tag = "k=" + std::to_string(row.k);
            detail::expect2(c, tag + " R_non_agg", rep.r_non_agg, "1.47");
            detail::expect2(c, tag + " R_within", rep.r_within, row.r_within);
            detail::expect2(c, tag + " R_avg", rep.r_avg, row.r_agg);
            detail::expect2(c, tag + " R_agg", rep.r_agg, row.r_agg);
            if (rep.effect != row.effect || !rep.trichotomy_consistent)
                c.mismatches.push_back(tag + ": effect " + std::string(to_string(rep.effect)) + ", expected " +
                                       std::string(to_string(row.effect)));
        }
        // 1.46 against 1.48 reads as "maintain" once the band is loosened to 2%.
        if (classify_aggregation_effect(o, d, 2, 0.02).effect_at_eps != AggregationEffect::maintain)
            c.mismatches.emplace_back("k=2: not classified maintain at maintain-eps 0.02");
        c.pass = c.mismatches.empty();
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace bullwhip::reference

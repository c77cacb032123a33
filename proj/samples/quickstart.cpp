// Minimal use of the header-only core: one order/demand pair, three bucket sizes.

#include <cstdio>

#include "bullwhip/bullwhip.hpp"

int main() {
    using namespace bullwhip;
    const Series orders{8, 7, 9, 5, 10, 10, 10, 5, 9, 7, 5, 9};
    const Series demand{9, 8, 5, 9, 9, 8, 10, 8, 8, 10, 5, 9};

    std::printf("bullwhip ratio %.4f\n", bullwhip_ratio(orders, demand));
    for (std::size_t k : {2, 3, 4}) {
        const auto r = classify_aggregation_effect(orders, demand, k);
        std::printf("k=%zu  r_within %.4f  r_avg %.4f  r_agg %.4f  %s\n", k, r.r_within, r.r_avg, r.r_agg,
                    std::string(to_string(r.effect)).c_str());
    }

    SimConfig config;
    config.phi = 0.5;
    const SimRun run = simulate(config);
    std::printf("simulated ratio %.4f over %zu periods\n", bullwhip_ratio(run.orders, run.demand), run.demand.size());
}

#pragma once

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>

#include "bullwhip/io/csv.hpp"
#include "bullwhip/simulation.hpp"

namespace bullwhip::io {

// Flat `key = value` file; '#' starts a comment. Unknown keys are rejected.
[[nodiscard]] inline SimConfig parse_sim_config(std::istream& in) {
    SimConfig c;
    std::string line;
    std::size_t row = 0;
    auto bad = [&](const std::string& key, const std::string& why) {
        return Error(ErrorCode::invalid_config, why, {row, key});
    };
    auto as_uint = [&](const std::string& key, const std::string& v) {
        std::uint64_t out = 0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) throw bad(key, "'" + v + "' is not a non-negative integer");
        return out;
    };
    auto as_double = [&](const std::string& key, const std::string& v) {
        double out = 0.0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) throw bad(key, "'" + v + "' is not a number");
        return out;
    };

    while (std::getline(in, line)) {
        ++row;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto body = detail::trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) throw bad("", "expected key = value");
        const std::string key(detail::trim(body.substr(0, eq)));
        const std::string value(detail::trim(body.substr(eq + 1)));

        if (key == "horizon") c.horizon = as_uint(key, value);
        else if (key == "phi") c.phi = as_double(key, value);
        else if (key == "mu") c.mu = as_double(key, value);
        else if (key == "sigma") c.sigma = as_double(key, value);
        else if (key == "forecast_window") c.forecast_window = as_uint(key, value);
        else if (key == "lead_time") c.lead_time = as_uint(key, value);
        else if (key == "seed") c.seed = as_uint(key, value);
        else if (key == "seasonal_amplitude") c.seasonal_amplitude = as_double(key, value);
        else if (key == "seasonal_period") {
            if (value == "none") c.seasonal_period.reset();
            else c.seasonal_period = as_uint(key, value);
        } else if (key == "truncate_orders") {
            if (value != "true" && value != "false") throw bad(key, "expected true or false");
            c.truncate_orders = value == "true";
        } else {
            throw bad(key, "unknown key '" + key + "'");
        }
    }
    validate(c);
    return c;
}

[[nodiscard]] inline SimConfig parse_sim_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_sim_config(in);
}

[[nodiscard]] inline std::string render_sim_config(const SimConfig& c) {
    std::ostringstream out;
    out.precision(17);
    out << "horizon = " << c.horizon << '\n'
        << "phi = " << c.phi << '\n'
        << "mu = " << c.mu << '\n'
        << "sigma = " << c.sigma << '\n'
        << "forecast_window = " << c.forecast_window << '\n'
        << "lead_time = " << c.lead_time << '\n'
        << "seed = " << c.seed << '\n'
        << "seasonal_amplitude = " << c.seasonal_amplitude << '\n'
        << "seasonal_period = " << (c.seasonal_period ? std::to_string(*c.seasonal_period) : "none") << '\n'
        << "truncate_orders = " << (c.truncate_orders ? "true" : "false") << '\n';
    return out.str();
}

}  // namespace bullwhip::io

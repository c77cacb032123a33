#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bullwhip/error.hpp"
#include "bullwhip/product_aggregation.hpp"

namespace bullwhip::io {

inline constexpr std::string_view kCsvHeader = "period,product,demand,order";

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// RFC 4180 style: fields separated by commas, optionally double-quoted with "" as escape.
inline std::vector<std::string> split_fields(std::string_view line, std::size_t row) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(ch);
            }
        } else if (ch == '"' && trim(cur).empty()) {
            quoted = was_quoted = true;
            cur.clear();
        } else if (ch == ',') {
            fields.push_back(was_quoted ? cur : std::string(trim(cur)));
            cur.clear();
            was_quoted = false;
        } else {
            cur.push_back(ch);
        }
    }
    if (quoted) throw Error(ErrorCode::non_numeric_value, "unterminated quoted field", {row, ""});
    fields.push_back(was_quoted ? cur : std::string(trim(cur)));
    return fields;
}

inline long long parse_period(const std::string& field, std::size_t row) {
    long long v = 0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (field.empty() || ec != std::errc{} || ptr != last)
        throw Error(ErrorCode::non_numeric_value, "period '" + field + "' is not an integer", {row, "period"});
    return v;
}

inline double parse_volume(const std::string& field, std::size_t row, const char* column) {
    double v = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
    if (field.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v))
        throw Error(ErrorCode::non_numeric_value, "'" + field + "' is not a finite decimal number", {row, column});
    return v;
}

}  // namespace detail

/**
 * Reads a long-format panel: header exactly `period,product,demand,order`,
 * one row per (period, product). Rows may come in any order; each product's
 * periods must form one contiguous ascending range shared by all products.
 * Products keep the order of their first appearance. LF or CRLF line ends;
 * blank lines are ignored. Error rows count data rows from 1.
 */
[[nodiscard]] inline PanelDataset load_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::empty_dataset, "input is empty");
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);

    const std::vector<std::string> expected{"period", "product", "demand", "order"};
    const auto header = detail::split_fields(detail::trim(line), 0);
    for (const auto& col : expected)
        if (std::find(header.begin(), header.end(), col) == header.end())
            throw Error(ErrorCode::missing_column, "header lacks column '" + col + "'; expected '" +
                                                       std::string(kCsvHeader) + "'", {0, col});
    if (header != expected)
        throw Error(ErrorCode::missing_column, "header must be exactly '" + std::string(kCsvHeader) + "'", {0, ""});

    struct Obs {
        long long period;
        double demand;
        double order;
        std::size_t row;
    };
    std::vector<std::string> order_seen;
    std::map<std::string, std::vector<Obs>> by_product;

    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (detail::trim(line).empty()) continue;
        const auto f = detail::split_fields(detail::trim(line), row);
        if (f.size() < expected.size())
            throw Error(ErrorCode::missing_column, "row has " + std::to_string(f.size()) + " fields, expected 4",
                        {row, expected[f.size()]});
        if (f.size() > expected.size())
            throw Error(ErrorCode::missing_column, "row has " + std::to_string(f.size()) + " fields, expected 4", {row, ""});
        if (f[1].empty()) throw Error(ErrorCode::missing_column, "empty product identifier", {row, "product"});

        Obs o{detail::parse_period(f[0], row), detail::parse_volume(f[2], row, "demand"),
              detail::parse_volume(f[3], row, "order"), row};
        auto [it, inserted] = by_product.try_emplace(f[1]);
        if (inserted) order_seen.push_back(f[1]);
        it->second.push_back(o);
    }
    if (order_seen.empty()) throw Error(ErrorCode::empty_dataset, "no data rows after the header");

    std::vector<Series> demand;
    std::vector<Series> orders;
    long long first_period = 0;
    long long last_period = 0;
    for (std::size_t n = 0; n < order_seen.size(); ++n) {
        auto& obs = by_product[order_seen[n]];
        std::stable_sort(obs.begin(), obs.end(), [](const Obs& a, const Obs& b) { return a.period < b.period; });
        for (std::size_t i = 1; i < obs.size(); ++i) {
            if (obs[i].period == obs[i - 1].period)
                throw Error(ErrorCode::duplicate_row,
                            "period " + std::to_string(obs[i].period) + " repeated for product '" + order_seen[n] + "'",
                            {std::max(obs[i].row, obs[i - 1].row), "period"});
            if (obs[i].period != obs[i - 1].period + 1)
                throw Error(ErrorCode::gap_in_periods,
                            "product '" + order_seen[n] + "' jumps from period " + std::to_string(obs[i - 1].period) +
                                " to " + std::to_string(obs[i].period),
                            {obs[i].row, "period"});
        }
        if (n == 0) {
            first_period = obs.front().period;
            last_period = obs.back().period;
        } else if (obs.front().period != first_period || obs.back().period != last_period) {
            throw Error(ErrorCode::length_mismatch,
                        "product '" + order_seen[n] + "' covers periods " + std::to_string(obs.front().period) + ".." +
                            std::to_string(obs.back().period) + ", expected " + std::to_string(first_period) + ".." +
                            std::to_string(last_period),
                        {obs.front().row, "period"});
        }
        std::vector<double> d;
        std::vector<double> o;
        for (const auto& x : obs) {
            d.push_back(x.demand);
            o.push_back(x.order);
        }
        demand.emplace_back(std::move(d));
        orders.emplace_back(std::move(o));
    }
    return PanelDataset(std::move(order_seen), std::move(demand), std::move(orders));
}

[[nodiscard]] inline PanelDataset load_csv_text(const std::string& text) {
    std::istringstream in(text);
    return load_csv(in);
}

[[nodiscard]] inline std::string quote_field(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
    }
    return out + "\"";
}

/// Renders a panel in the ingestion format, periods numbered from 1.
[[nodiscard]] inline std::string write_csv(const PanelDataset& panel) {
    std::ostringstream out;
    out.precision(17);
    out << kCsvHeader << '\n';
    for (std::size_t t = 0; t < panel.periods(); ++t)
        for (std::size_t n = 0; n < panel.products_count(); ++n)
            out << (t + 1) << ',' << quote_field(panel.products()[n]) << ',' << panel.demand()[n][t] << ','
                << panel.orders()[n][t] << '\n';
    return out.str();
}

}  // namespace bullwhip::io

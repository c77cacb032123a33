#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bullwhip/error.hpp"

namespace bullwhip {

/**
 * A finite, non-empty, ordered sequence of volumes (one value per period).
 *
 * Construction validates that the sequence is non-empty and every value is
 * finite; after that the series is immutable.
 */
class Series {
public:
    explicit Series(std::vector<double> values) : values_(std::move(values)) { validate(); }
    Series(std::initializer_list<double> values) : values_(values) { validate(); }

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<double>& vector() const noexcept { return values_; }
    [[nodiscard]] auto begin() const noexcept { return values_.begin(); }
    [[nodiscard]] auto end() const noexcept { return values_.end(); }

    /// Contiguous sub-range [first, first + count).
    [[nodiscard]] Series slice(std::size_t first, std::size_t count) const {
        return Series(std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(first),
                                          values_.begin() + static_cast<std::ptrdiff_t>(first + count)));
    }

    friend bool operator==(const Series&, const Series&) = default;

private:
    void validate() const {
        if (values_.empty()) throw Error(ErrorCode::invalid_series, "series must hold at least one value");
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i]))
                throw Error(ErrorCode::invalid_series, "non-finite value at index " + std::to_string(i));
        }
    }

    std::vector<double> values_;
};

}  // namespace bullwhip

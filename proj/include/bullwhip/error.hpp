#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bullwhip {

enum class ErrorCode {
    invalid_series,
    indivisible_length,
    length_mismatch,
    degenerate_demand,
    degenerate_subset,
    not_symmetric,
    convergence_failure,
    insufficient_data,
    invalid_config,
    missing_column,
    duplicate_row,
    gap_in_periods,
    non_numeric_value,
    empty_dataset,
    malformed_report,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_series: return "InvalidSeries";
        case ErrorCode::indivisible_length: return "IndivisibleLength";
        case ErrorCode::length_mismatch: return "LengthMismatch";
        case ErrorCode::degenerate_demand: return "DegenerateDemand";
        case ErrorCode::degenerate_subset: return "DegenerateSubset";
        case ErrorCode::not_symmetric: return "NotSymmetric";
        case ErrorCode::convergence_failure: return "ConvergenceFailure";
        case ErrorCode::insufficient_data: return "InsufficientData";
        case ErrorCode::invalid_config: return "InvalidConfig";
        case ErrorCode::missing_column: return "MissingColumn";
        case ErrorCode::duplicate_row: return "DuplicateRow";
        case ErrorCode::gap_in_periods: return "GapInPeriods";
        case ErrorCode::non_numeric_value: return "NonNumericValue";
        case ErrorCode::empty_dataset: return "EmptyDataset";
        case ErrorCode::malformed_report: return "MalformedReport";
    }
    return "Unknown";
}

/// Location inside an input file; rows count data rows from 1 (header excluded).
struct Location {
    std::size_t row = 0;
    std::string column;
};

/**
 * Every data-dependent failure in the library is raised as this type.
 * The message is prefixed with the error name so it can be surfaced verbatim.
 */
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

    Error(ErrorCode code, const std::string& detail, Location where)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail + " (row " +
                             std::to_string(where.row) +
                             (where.column.empty() ? "" : ", column '" + where.column + "'") + ")"),
          code_(code),
          where_(std::move(where)) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }
    [[nodiscard]] const std::optional<Location>& where() const noexcept { return where_; }

    /// Index of the offending subset for DegenerateSubset, when known.
    [[nodiscard]] std::optional<std::size_t> subset_index() const noexcept { return subset_; }

    Error& with_subset(std::size_t index) {
        subset_ = index;
        return *this;
    }

private:
    ErrorCode code_;
    std::optional<Location> where_;
    std::optional<std::size_t> subset_;
};

}  // namespace bullwhip

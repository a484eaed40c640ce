#pragma once

#include "pcrkit/matrix.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pcrkit {

/// Yearly observations of named variables, one of which is the response.
///
/// Construction validates: years strictly increasing by exactly one, unique
/// non-empty names, every cell finite, and the response present among the names.
class TimeSeriesTable {
public:
    TimeSeriesTable(std::vector<int> years, std::vector<std::string> names, Matrix values,
                    std::string response = "IY");

    const std::vector<int>& years() const noexcept { return years_; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const Matrix& values() const noexcept { return values_; }
    const std::string& response() const noexcept { return response_; }

    std::size_t n_years() const noexcept { return years_.size(); }
    std::size_t n_vars() const noexcept { return names_.size(); }

    std::optional<std::size_t> index_of(const std::string& name) const;
    /// Throws ValidationError when `name` is not a column.
    Vector column(const std::string& name) const;
    /// Every column except the response, in table order.
    std::vector<std::string> predictor_names() const;
    /// Sub-table restricted to `names` (kept in the order given); response is carried over
    /// when present, otherwise the first selected name becomes the response.
    TimeSeriesTable select(const std::vector<std::string>& names) const;
    TimeSeriesTable with_response(std::string response) const;

private:
    std::vector<int> years_;
    std::vector<std::string> names_;
    Matrix values_;
    std::string response_;
};

} // namespace pcrkit

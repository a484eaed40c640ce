#include "pcrkit/table.hpp"

#include "pcrkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pcrkit {

TimeSeriesTable::TimeSeriesTable(std::vector<int> years, std::vector<std::string> names,
                                 Matrix values, std::string response)
    : years_(std::move(years)), names_(std::move(names)), values_(std::move(values)),
      response_(std::move(response)) {
    if (values_.rows() != years_.size() || values_.cols() != names_.size())
        throw DimensionError("table values are " + std::to_string(values_.rows()) + "x" +
                             std::to_string(values_.cols()) + ", expected " +
                             std::to_string(years_.size()) + "x" + std::to_string(names_.size()));
    for (std::size_t i = 1; i < years_.size(); ++i) {
        if (years_[i] == years_[i - 1])
            throw ValidationError("duplicate year " + std::to_string(years_[i]));
        if (years_[i] < years_[i - 1])
            throw ValidationError("years not increasing at " + std::to_string(years_[i]));
        if (years_[i] != years_[i - 1] + 1)
            throw ValidationError("gap in years: " + std::to_string(years_[i - 1] + 1) +
                                  " missing");
    }
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw ValidationError("empty column name");
        if (!seen.insert(n).second) throw ValidationError("duplicate column '" + n + "'");
    }
    for (std::size_t r = 0; r < values_.rows(); ++r)
        for (std::size_t c = 0; c < values_.cols(); ++c)
            if (!std::isfinite(values_(r, c)))
                throw ValidationError("non-finite value at year " + std::to_string(years_[r]) +
                                      ", column '" + names_[c] + "'");
    if (!seen.contains(response_))
        throw ValidationError("response column '" + response_ + "' not present");
}

std::optional<std::size_t> TimeSeriesTable::index_of(const std::string& name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

Vector TimeSeriesTable::column(const std::string& name) const {
    const auto idx = index_of(name);
    if (!idx) throw ValidationError("missing column '" + name + "'");
    return values_.col(*idx);
}

std::vector<std::string> TimeSeriesTable::predictor_names() const {
    std::vector<std::string> out;
    for (const auto& n : names_)
        if (n != response_) out.push_back(n);
    return out;
}

TimeSeriesTable TimeSeriesTable::select(const std::vector<std::string>& names) const {
    if (names.empty()) throw ValidationError("cannot select zero columns");
    std::vector<std::size_t> cols;
    for (const auto& n : names) {
        const auto idx = index_of(n);
        if (!idx) throw ValidationError("missing column '" + n + "'");
        cols.push_back(*idx);
    }
    std::vector<std::size_t> rows(years_.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    const bool keeps_response = std::find(names.begin(), names.end(), response_) != names.end();
    return TimeSeriesTable(years_, names, values_.select(rows, cols),
                           keeps_response ? response_ : names.front());
}

TimeSeriesTable TimeSeriesTable::with_response(std::string response) const {
    return TimeSeriesTable(years_, names_, values_, std::move(response));
}

} // namespace pcrkit

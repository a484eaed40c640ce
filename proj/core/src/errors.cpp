#include "pcrkit/errors.hpp"

#include <cstdio>

namespace pcrkit {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string join(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += ", ";
        out += n;
    }
    return out;
}

} // namespace

NonFiniteError::NonFiniteError(std::size_t row, std::size_t col)
    : Error("non-finite entry at (" + std::to_string(row) + ", " + std::to_string(col) + ")"),
      row_(row), col_(col) {}

AsymmetryError::AsymmetryError(std::size_t row, std::size_t col, double difference)
    : Error("matrix is not symmetric: |a(" + std::to_string(row) + "," + std::to_string(col) +
            ") - a(" + std::to_string(col) + "," + std::to_string(row) + ")| = " +
            fmt_double(difference)),
      row_(row), col_(col), difference_(difference) {}

ConvergenceError::ConvergenceError(const std::string& what, double residual)
    : Error(what + " (residual " + fmt_double(residual) + ")"), residual_(residual) {}

RankDeficiencyError::RankDeficiencyError(std::size_t column, double pivot)
    : Error("rank-deficient design: column " + std::to_string(column) +
            " is linearly dependent on preceding columns (pivot " + fmt_double(pivot) + ")"),
      column_(column), pivot_(pivot) {}

NotPositiveDefiniteError::NotPositiveDefiniteError(const std::string& what,
                                                   double smallest_eigenvalue)
    : Error(what + " (smallest eigenvalue " + fmt_double(smallest_eigenvalue) + ")"),
      smallest_(smallest_eigenvalue) {}

ZeroVarianceError::ZeroVarianceError(std::string column)
    : Error("column '" + column + "' has zero variance"), column_(std::move(column)) {}

NameMismatchError::NameMismatchError(std::vector<std::string> unmatched)
    : Error("variable names do not match: " + join(unmatched)), unmatched_(std::move(unmatched)) {}

CollinearityError::CollinearityError(std::string variable)
    : Error("collinearity: '" + variable +
            "' is a linear combination of the intercept and preceding predictors"),
      variable_(std::move(variable)) {}

ParseError::ParseError(std::size_t line, std::string column, const std::string& detail)
    : Error("line " + std::to_string(line) + ", column '" + column + "': " + detail),
      line_(line), column_(std::move(column)) {}

IoError::IoError(std::string path, const std::string& detail)
    : Error(path + ": " + detail), path_(std::move(path)) {}

} // namespace pcrkit

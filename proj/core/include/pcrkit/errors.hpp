#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcrkit {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes of operands do not agree (non-square input, length mismatch, ...).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A NaN or infinity reached an operation that only accepts finite values.
class NonFiniteError : public Error {
public:
    NonFiniteError(std::size_t row, std::size_t col);
    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_, col_;
};

/// A matrix that must be symmetric is not; reports the worst pair.
class AsymmetryError : public Error {
public:
    AsymmetryError(std::size_t row, std::size_t col, double difference);
    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }
    double difference() const noexcept { return difference_; }

private:
    std::size_t row_, col_;
    double difference_;
};

/// An iterative routine hit its sweep cap.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual);
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// A design column is (numerically) a linear combination of the columns before it.
class RankDeficiencyError : public Error {
public:
    RankDeficiencyError(std::size_t column, double pivot);
    std::size_t column() const noexcept { return column_; }
    double pivot() const noexcept { return pivot_; }

private:
    std::size_t column_;
    double pivot_;
};

/// A matrix required to be positive (semi-)definite is not.
class NotPositiveDefiniteError : public Error {
public:
    NotPositiveDefiniteError(const std::string& what, double smallest_eigenvalue);
    double smallest_eigenvalue() const noexcept { return smallest_; }

private:
    double smallest_;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class ZeroVarianceError : public Error {
public:
    explicit ZeroVarianceError(std::string column);
    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

/// Variable names of two operands do not line up.
class NameMismatchError : public Error {
public:
    explicit NameMismatchError(std::vector<std::string> unmatched);
    const std::vector<std::string>& unmatched() const noexcept { return unmatched_; }

private:
    std::vector<std::string> unmatched_;
};

/// Rank deficiency annotated with the variable that is collinear with earlier ones.
class CollinearityError : public Error {
public:
    explicit CollinearityError(std::string variable);
    const std::string& variable() const noexcept { return variable_; }

private:
    std::string variable_;
};

/// A table violates its invariants (gaps, duplicate years, missing columns).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed input cell. `line` is 1-based in the file, `column` is the header name.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::string column, const std::string& detail);
    std::size_t line() const noexcept { return line_; }
    const std::string& column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::string column_;
};

/// Component retention could not produce a usable component count.
class RetentionError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    IoError(std::string path, const std::string& detail);
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace pcrkit

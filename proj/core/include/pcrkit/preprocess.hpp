#pragma once

#include "pcrkit/matrix.hpp"
#include "pcrkit/table.hpp"

#include <string>
#include <vector>

namespace pcrkit {

enum class DiffMode { Absolute, Percent, Off };

/// Year-over-year increments: year t of the result holds v(t) − v(t−1)
/// (Absolute) or 100·(v(t) − v(t−1))/v(t−1) (Percent). The first year is dropped.
/// `Off` returns the table unchanged. Requires at least 3 years.
TimeSeriesTable difference(const TimeSeriesTable& table, DiffMode mode = DiffMode::Absolute);

/// Inverse of absolute differencing: running sums of `increments` seeded with
/// `first_row` at `first_year` (which becomes the first row of the result).
TimeSeriesTable cumulative_sum(const TimeSeriesTable& increments, std::span<const double> first_row,
                               int first_year);

/// Column means and sample standard deviations used to standardize data.
struct StandardizationParams {
    std::vector<std::string> names;
    Vector means;
    Vector sds;

    /// Standardizes one observation given in `names` order.
    Vector apply(std::span<const double> row) const;
};

struct StandardizedMatrix {
    StandardizationParams params;
    Matrix values; ///< observations × variables, each column mean 0 and sample sd 1

    const std::vector<std::string>& names() const noexcept { return params.names; }
    /// Maps standardized values back to original units.
    Matrix destandardize() const;
};

/// Standardizes every column using the (n−1) sample deviation. Throws
/// ZeroVarianceError naming the first constant column.
StandardizedMatrix standardize(const std::vector<std::string>& names, const Matrix& values);
StandardizedMatrix standardize(const TimeSeriesTable& table);

/// Symmetric, unit-diagonal matrix of Pearson correlations over named variables.
class CorrelationMatrix {
public:
    /// Validates symmetry (1e−9), unit diagonal (1e−9) and entries in [−1, 1];
    /// stores an exactly symmetric copy with diagonal set to 1.
    CorrelationMatrix(std::vector<std::string> names, Matrix values);

    const std::vector<std::string>& names() const noexcept { return names_; }
    const Matrix& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return names_.size(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_(i, j); }

    double smallest_eigenvalue() const;
    CorrelationMatrix select(const std::vector<std::string>& names) const;

private:
    std::vector<std::string> names_;
    Matrix values_;
};

/// Pearson correlations of the standardized columns, (1/(n−1))·ZᵀZ.
CorrelationMatrix correlation_matrix(const StandardizedMatrix& m);

/// Result of projecting a matrix onto the nearest correlation matrix.
struct CorrelationRepair {
    CorrelationMatrix matrix;
    int iterations = 0;
    double max_adjustment = 0.0; ///< largest |repaired − input| entry
};

inline constexpr double kRepairEigenFloor = 1e-6;

/// Alternating projections with Dykstra's correction between the unit-diagonal
/// matrices and {X : λ_min(X) ≥ eigen_floor}. Returns the input untouched when
/// it already satisfies the floor.
CorrelationRepair nearest_correlation(const CorrelationMatrix& r,
                                      double eigen_floor = kRepairEigenFloor);

/// One scatter panel: the points (x, y) for a pair of variables, one per year.
struct ScatterBlock {
    std::string x_name;
    std::string y_name;
    std::vector<int> years;
    Vector x;
    Vector y;
};

/// All unordered variable pairs, ordered lexicographically by (x_name, y_name)
/// with x_name < y_name.
std::vector<ScatterBlock> scatter_matrix_export(const TimeSeriesTable& table);

struct VifEntry {
    std::string name;
    double value = 1.0; ///< +infinity marks perfect collinearity
    double r_squared = 0.0;
    bool infinite() const noexcept;
};

/// Variance inflation factors 1/(1 − R²ᵢ) from regressing each column on the
/// others (with intercept). R²ᵢ ≥ 1 − 1e−12 yields an infinite entry.
std::vector<VifEntry> vif(const StandardizedMatrix& m);

} // namespace pcrkit

#pragma once

#include "pcrkit/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace pcrkit {

/// Eigenpairs of a symmetric matrix.
///
/// `values` are sorted descending (stable: equal eigenvalues keep the order in
/// which the Jacobi sweep left them on the diagonal).  Column i of `vectors` is
/// the unit eigenvector for `values[i]`, oriented so that its largest-magnitude
/// entry is positive (ties go to the lowest index).
struct EigenDecomposition {
    Vector values;
    Matrix vectors;
    int sweeps = 0;
};

inline constexpr double kSymmetryTolerance = 1e-9;
inline constexpr double kJacobiTolerance = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

/// Throws AsymmetryError for the worst pair exceeding `tolerance`.
void require_symmetric(const Matrix& a, double tolerance = kSymmetryTolerance);

/// Cyclic Jacobi eigensolver. Stops once the off-diagonal Frobenius norm drops
/// below kJacobiTolerance·‖A‖_F; throws ConvergenceError after kJacobiMaxSweeps.
EigenDecomposition eigen_symmetric(const Matrix& a);

enum class RankPolicy {
    Throw,         ///< first dependent column raises RankDeficiencyError
    DropDependent, ///< dependent columns get coefficient 0 and are listed in `dropped`
};

struct LeastSquaresSolution {
    Vector coefficients;
    Vector residuals;
    std::vector<std::size_t> dropped;
};

/// Relative pivot threshold below which a column counts as dependent.
inline constexpr double kRankTolerance = 1e-12;

/// Householder QR least squares, columns processed in order. A column whose
/// remaining norm after projecting out the earlier columns is at most
/// kRankTolerance times its own norm is linearly dependent.
LeastSquaresSolution least_squares(const Matrix& design, std::span<const double> response,
                                   RankPolicy policy = RankPolicy::Throw);

/// Coefficients minimizing ‖design·β − response‖₂; throws RankDeficiencyError.
Vector solve_least_squares(const Matrix& design, std::span<const double> response);

inline constexpr double kSpdTolerance = 1e-10;

/// Inverse of a symmetric positive definite matrix (Cholesky). Throws
/// NotPositiveDefiniteError when the smallest eigenvalue is ≤ kSpdTolerance.
Matrix invert_spd(const Matrix& a);

} // namespace pcrkit

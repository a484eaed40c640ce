#pragma once

#include "pcrkit/matrix.hpp"
#include "pcrkit/preprocess.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pcrkit {

/// Principal components of a correlation matrix, optionally rotated.
struct PcaSolution {
    std::vector<std::string> names; ///< variables, one per loading row
    std::size_t k = 0;              ///< retained components

    Vector eigenvalues;          ///< all p eigenvalues, descending
    Vector proportion_var;       ///< λⱼ/p for every eigenvalue
    Vector cumulative_var;

    Matrix loadings;             ///< p × k, column j = √λⱼ·vⱼ

    std::string rotation_method = "none";
    Matrix rotated_loadings;     ///< p × k; equals `loadings` until rotated
    Matrix rotation;             ///< k × k orthogonal, rotated_loadings = loadings·rotation
    Vector rotated_proportion_var; ///< column sums of squared rotated loadings over p
    Vector rotated_cumulative_var;
    Vector varimax_criterion;    ///< criterion after each sweep, empty when unrotated
    int rotation_sweeps = 0;

    Vector communality;          ///< per variable, Σⱼ loading²
    Vector uniqueness;           ///< per variable, 1 − communality

    std::vector<std::string> component_names() const;
};

inline constexpr double kPsdTolerance = 1e-8;

/// Eigen-decomposes `r` and keeps `k` components, or every component with
/// eigenvalue > 1 when `k` is empty. Throws NotPositiveDefiniteError when the
/// smallest eigenvalue is below −kPsdTolerance, RetentionError when `k` is out
/// of range or automatic retention finds nothing.
PcaSolution extract(const CorrelationMatrix& r, std::optional<std::size_t> k = std::nullopt);

struct VarimaxOptions {
    bool kaiser_normalize = true;
    int max_sweeps = 1000;
    double angle_tolerance = 1e-13;
};

/// Varimax rotation by sweeps of pairwise planar rotations. Columns of the
/// result are ordered by descending sum of squared loadings, each flipped so its
/// largest-magnitude loading is positive. k = 1 returns the input unchanged.
PcaSolution rotate_varimax(const PcaSolution& solution, const VarimaxOptions& options = {});

/// Raw varimax criterion Σⱼ [Σᵢ l⁴ᵢⱼ/p − (Σᵢ l²ᵢⱼ/p)²].
double varimax_criterion(const Matrix& loadings);

struct ScoreWeights {
    std::vector<std::string> names;
    std::vector<std::string> component_names;
    Matrix weights; ///< p × k, scores = Z·weights
    std::string method = "regression";
    bool ridge_applied = false;
};

inline constexpr double kScoreRidge = 1e-8;

/// Regression-method weights W = R⁻¹·L using the rotated loadings. A
/// near-singular R (smallest eigenvalue ≤ 1e−10) is an error unless
/// `allow_ridge`, in which case kScoreRidge is added to the diagonal.
ScoreWeights score_weights(const CorrelationMatrix& r, const PcaSolution& solution,
                           bool allow_ridge = false);

struct ComponentScores {
    std::vector<std::string> component_names;
    Matrix values; ///< observations × components
};

/// Scores Z·W, matching columns of `z` to rows of `w` by variable name.
ComponentScores component_scores(const StandardizedMatrix& z, const ScoreWeights& w);

} // namespace pcrkit

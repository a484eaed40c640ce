#pragma once

#include "pcrkit/matrix.hpp"
#include "pcrkit/pca.hpp"
#include "pcrkit/preprocess.hpp"

#include <map>
#include <string>
#include <vector>

namespace pcrkit {

/// Ordinary least squares fit with intercept.
struct OlsFit {
    double intercept = 0.0;
    std::vector<std::string> names; ///< one per slope coefficient
    Vector coefficients;
    Vector fitted;
    Vector residuals;
    double r_squared = 0.0;
    double residual_se = 0.0;
    std::vector<std::string> warnings;

    double predict(std::span<const double> regressors) const;
};

/// Regresses `response` on the columns of `predictors` plus an intercept.
/// Needs at least p + 2 observations. A dependent column raises
/// CollinearityError naming the variable. A constant response gives R² = 0 and
/// a warning.
OlsFit fit_ols(const std::vector<std::string>& names, const Matrix& predictors,
               std::span<const double> response);

/// Principal-components regression: `response` on the component scores.
OlsFit fit_pcr(const ComponentScores& scores, std::span<const double> response);

/// Price levels rebuilt from increments: levels[t] = levels[t−1] + increments[t],
/// starting from `base`. Exact whenever the increments were produced by
/// differencing values that are within a factor of two of their predecessor.
struct PricePath {
    double base = 0.0;
    Vector increments;
    Vector levels;
};

PricePath reconstruct_prices(double base, std::span<const double> increments);

/// Predicted response for a new predictor row, standardized with the training
/// parameters, mapped to scores by `w`, and combined through the PCR `model`.
double predict_increment(const OlsFit& model, const ScoreWeights& w,
                         const StandardizationParams& params,
                         const std::map<std::string, double>& row);

} // namespace pcrkit

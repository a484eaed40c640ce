#include "pcrkit/regression.hpp"

#include "pcrkit/errors.hpp"
#include "pcrkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pcrkit {

double OlsFit::predict(std::span<const double> regressors) const {
    if (regressors.size() != coefficients.size())
        throw DimensionError("expected " + std::to_string(coefficients.size()) + " regressors");
    return intercept + dot(coefficients, regressors);
}

OlsFit fit_ols(const std::vector<std::string>& names, const Matrix& predictors,
               std::span<const double> response) {
    const std::size_t n = predictors.rows();
    const std::size_t p = predictors.cols();
    if (names.size() != p) throw DimensionError("one name per predictor column required");
    if (response.size() != n) throw DimensionError("response length does not match predictors");
    if (n < p + 2)
        throw InsufficientDataError("OLS with " + std::to_string(p) + " predictors needs at least " +
                                    std::to_string(p + 2) + " observations, got " +
                                    std::to_string(n));

    Matrix design(n, p + 1);
    for (std::size_t r = 0; r < n; ++r) {
        design(r, 0) = 1.0;
        for (std::size_t c = 0; c < p; ++c) design(r, c + 1) = predictors(r, c);
    }

    LeastSquaresSolution ls;
    try {
        ls = least_squares(design, response, RankPolicy::Throw);
    } catch (const RankDeficiencyError& e) {
        throw CollinearityError(e.column() == 0 ? std::string("(intercept)")
                                                : names[e.column() - 1]);
    }

    OlsFit fit;
    fit.intercept = ls.coefficients[0];
    fit.names = names;
    fit.coefficients.assign(ls.coefficients.begin() + 1, ls.coefficients.end());
    fit.residuals = std::move(ls.residuals);
    fit.fitted.resize(n);
    for (std::size_t r = 0; r < n; ++r) fit.fitted[r] = response[r] - fit.residuals[r];

    const double mean = std::accumulate(response.begin(), response.end(), 0.0) /
                        static_cast<double>(n);
    double sse = 0.0, sst = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        sse += fit.residuals[r] * fit.residuals[r];
        sst += (response[r] - mean) * (response[r] - mean);
    }
    if (!(sst > 1e-28 * std::max(1.0, mean * mean) * static_cast<double>(n))) {
        fit.r_squared = 0.0;
        fit.warnings.push_back("response has zero variance; R-squared defined as 0");
    } else {
        fit.r_squared = std::clamp(1.0 - sse / sst, 0.0, 1.0);
    }
    fit.residual_se = std::sqrt(sse / static_cast<double>(n - p - 1));
    return fit;
}

OlsFit fit_pcr(const ComponentScores& scores, std::span<const double> response) {
    return fit_ols(scores.component_names, scores.values, response);
}

PricePath reconstruct_prices(double base, std::span<const double> increments) {
    if (!std::isfinite(base)) throw NonFiniteError(0, 0);
    PricePath path;
    path.base = base;
    path.increments.assign(increments.begin(), increments.end());
    path.levels.resize(increments.size());
    double level = base;
    for (std::size_t t = 0; t < increments.size(); ++t) {
        if (!std::isfinite(increments[t])) throw NonFiniteError(t, 0);
        level += increments[t];
        path.levels[t] = level;
    }
    return path;
}

double predict_increment(const OlsFit& model, const ScoreWeights& w,
                         const StandardizationParams& params,
                         const std::map<std::string, double>& row) {
    const std::size_t k = w.weights.cols();
    if (model.coefficients.size() != k)
        throw DimensionError("model has " + std::to_string(model.coefficients.size()) +
                             " coefficients but weights have " + std::to_string(k) +
                             " components");
    Vector scores(k, 0.0);
    for (std::size_t i = 0; i < w.names.size(); ++i) {
        const std::string& name = w.names[i];
        const auto value = row.find(name);
        if (value == row.end()) throw NameMismatchError({name});
        const auto pit = std::find(params.names.begin(), params.names.end(), name);
        if (pit == params.names.end()) throw NameMismatchError({name});
        const std::size_t pi = static_cast<std::size_t>(pit - params.names.begin());
        const double z = (value->second - params.means[pi]) / params.sds[pi];
        for (std::size_t j = 0; j < k; ++j) scores[j] += z * w.weights(i, j);
    }
    return model.predict(scores);
}

} // namespace pcrkit

#include "oracles.hpp"

#include "pcrkit/errors.hpp"
#include "pcrkit/preprocess.hpp"
#include "pcrkit/regression.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace pcrkit;

namespace {

struct PcrRun {
    StandardizedMatrix z;
    ScoreWeights w;
    ComponentScores scores;
    OlsFit fit;
};

PcrRun run_pcr(const std::vector<std::string>& names, const Matrix& x, const Vector& y,
               std::optional<std::size_t> k, bool ridge = false) {
    PcrRun run;
    run.z = standardize(names, x);
    const auto r = correlation_matrix(run.z);
    const auto s = rotate_varimax(extract(r, k));
    run.w = score_weights(r, s, ridge);
    run.scores = component_scores(run.z, run.w);
    run.fit = fit_pcr(run.scores, y);
    return run;
}

std::vector<std::string> names_for(std::size_t p) {
    std::vector<std::string> n;
    for (std::size_t i = 0; i < p; ++i) n.push_back("x" + std::to_string(i));
    return n;
}

} // namespace

TEST_CASE("fit_ols: response copying one predictor") {
    std::mt19937_64 rng(51);
    const Matrix x = oracle::random_normal(rng, 15, 3);
    const auto fit = fit_ols({"a", "b", "c"}, x, x.col(1));
    CHECK(std::abs(fit.coefficients[0]) < 1e-12);
    CHECK(std::abs(fit.coefficients[1] - 1.0) < 1e-12);
    CHECK(std::abs(fit.coefficients[2]) < 1e-12);
    CHECK(std::abs(fit.intercept) < 1e-12);
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fit_ols: response unrelated to the predictor gives the null model") {
    const auto fit = fit_ols({"x"}, Matrix{{-2}, {-1}, {0}, {1}, {2}}, Vector{3, 1, 0, 1, 3});
    CHECK(std::abs(fit.coefficients[0]) < 1e-14);
    CHECK(fit.intercept == doctest::Approx(1.6).epsilon(1e-14));
    CHECK(fit.r_squared == doctest::Approx(0.0));
}

TEST_CASE("fit_ols: three-point bivariate fit") {
    // Normal equations [[3,3],[3,5]]β = [5,7]; SSE = 2/3, SST = 8/3.
    const auto fit = fit_ols({"x"}, Matrix{{0}, {1}, {2}}, Vector{1, 1, 3});
    CHECK(fit.intercept == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(fit.coefficients[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fit.r_squared == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(fit.residual_se == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("fit_ols: collinear predictors are named") {
    Matrix x{{1, 2, 2}, {2, 1, 1}, {3, 5, 5}, {4, 3, 3}, {5, 8, 8}};
    try {
        fit_ols({"REI", "GVA", "GVA_copy"}, x, Vector{1, 2, 3, 4, 6});
        FAIL("expected CollinearityError");
    } catch (const CollinearityError& e) {
        CHECK(e.variable() == "GVA_copy");
    }
    // A constant predictor duplicates the intercept.
    try {
        fit_ols({"c"}, Matrix{{4}, {4}, {4}}, Vector{1, 2, 4});
        FAIL("expected CollinearityError");
    } catch (const CollinearityError& e) {
        CHECK(e.variable() == "c");
    }
}

TEST_CASE("fit_ols: needs p + 2 observations") {
    CHECK_THROWS_AS(fit_ols({"a", "b"}, Matrix{{1, 2}, {2, 1}, {3, 3}}, Vector{1, 2, 3}),
                    InsufficientDataError);
}

TEST_CASE("fit_ols: random fits have zero-mean residuals and bounded R-squared") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t p = 1 + trial % 4;
        const Matrix x = oracle::random_normal(rng, 20, p);
        const Vector y = oracle::random_normal(rng, 20, 1).col(0);
        const auto fit = fit_ols(names_for(p), x, y);
        const double mean = std::accumulate(fit.residuals.begin(), fit.residuals.end(), 0.0) / 20.0;
        CHECK(std::abs(mean) <= 1e-10);
        CHECK(fit.r_squared >= 0.0);
        CHECK(fit.r_squared <= 1.0);
        std::vector<Vector> cols;
        for (std::size_t j = 0; j < p; ++j) cols.push_back(x.col(j));
        CHECK(fit.r_squared == doctest::Approx(oracle::r_squared(cols, y)).epsilon(1e-9));
    }
}

TEST_CASE("fit_ols: R-squared is invariant to positive affine rescaling") {
    std::mt19937_64 rng(55);
    const Matrix x = oracle::random_normal(rng, 25, 3);
    const Vector y = oracle::random_normal(rng, 25, 1).col(0);
    const auto base = fit_ols(names_for(3), x, y);
    Matrix scaled = x;
    for (std::size_t t = 0; t < 25; ++t) scaled(t, 1) = 250.0 * x(t, 1) + 1e4;
    const auto fit = fit_ols(names_for(3), scaled, y);
    CHECK(std::abs(fit.r_squared - base.r_squared) < 1e-12);
    CHECK(fit.coefficients[1] == doctest::Approx(base.coefficients[1] / 250.0).epsilon(1e-9));
}

TEST_CASE("fit_pcr: all components reproduce full OLS fitted values") {
    std::mt19937_64 rng(57);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t p = 2 + trial % 5;
        const Matrix x = oracle::random_normal(rng, 30, p);
        const Vector y = oracle::random_normal(rng, 30, 1).col(0);
        const auto ols = fit_ols(names_for(p), x, y);
        const auto pcr = run_pcr(names_for(p), x, y, p);
        for (std::size_t t = 0; t < 30; ++t) CHECK(std::abs(pcr.fit.fitted[t] - ols.fitted[t]) <= 1e-8);
    }
}

TEST_CASE("fit_pcr: orthogonal scores recover planted slopes") {
    std::mt19937_64 rng(59);
    const Matrix u = oracle::orthonormal_centered(rng, 12, 2);
    ComponentScores scores{{"RC1", "RC2"}, u};
    Vector y(12);
    for (std::size_t t = 0; t < 12; ++t) y[t] = 5.0 + 2.0 * u(t, 0) - u(t, 1);
    const auto fit = fit_pcr(scores, y);
    CHECK(fit.coefficients[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.coefficients[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(5.0).epsilon(1e-12));
    // Orthogonal scores: each γ equals its simple-regression slope.
    for (std::size_t j = 0; j < 2; ++j) {
        const auto simple = fit_ols({"s"}, Matrix::from_columns({u.col(j)}), y);
        CHECK(std::abs(simple.coefficients[0] - fit.coefficients[j]) <= 1e-8);
    }
}

TEST_CASE("fit_pcr: zero response") {
    std::mt19937_64 rng(61);
    ComponentScores scores{{"RC1", "RC2"}, oracle::random_normal(rng, 10, 2)};
    const auto fit = fit_pcr(scores, Vector(10, 0.0));
    CHECK(fit.coefficients == Vector{0.0, 0.0});
    CHECK(fit.r_squared == 0.0);
    CHECK(fit.warnings.size() == 1);
}

TEST_CASE("fit_pcr: residuals are orthogonal to the scores") {
    std::mt19937_64 rng(63);
    const Matrix x = oracle::random_normal(rng, 40, 5);
    const Vector y = oracle::random_normal(rng, 40, 1).col(0);
    const auto run = run_pcr(names_for(5), x, y, 2);
    const Matrix res = Matrix::from_columns({run.fit.residuals});
    const Matrix dots = transpose_times(run.scores.values, res);
    CHECK(dots.max_abs() <= 1e-8 * run.scores.values.max_abs() * max_abs(y) * 40.0);
}

TEST_CASE("duplicated predictor breaks OLS but not PCR") {
    std::mt19937_64 rng(65);
    const Matrix x = oracle::random_normal(rng, 30, 3);
    const Vector y = oracle::random_normal(rng, 30, 1).col(0);
    Matrix dup(30, 4);
    for (std::size_t t = 0; t < 30; ++t) {
        for (std::size_t c = 0; c < 3; ++c) dup(t, c) = x(t, c);
        dup(t, 3) = x(t, 0);
    }
    auto dup_names = names_for(3);
    dup_names.push_back("x0_copy");
    CHECK_THROWS_AS(fit_ols(dup_names, dup, y), CollinearityError);

    const auto base = run_pcr(names_for(3), x, y, 3);
    const auto with_dup = run_pcr(dup_names, dup, y, 3, true);
    CHECK(with_dup.fit.coefficients.size() == 3);
    for (double g : with_dup.fit.coefficients) CHECK(std::isfinite(g));
    CHECK(std::abs(with_dup.fit.r_squared - base.fit.r_squared) <= 1e-8);

    const auto full = extract(correlation_matrix(standardize(dup_names, dup)), 4);
    CHECK(std::abs(full.eigenvalues.back()) < 1e-12);
}

TEST_CASE("reconstruct_prices: single step, flat path, inverse of differencing") {
    const auto one = reconstruct_prices(100000.0, Vector{5000.0});
    CHECK(one.levels == Vector{105000.0});
    const auto flat = reconstruct_prices(250.0, Vector(4, 0.0));
    CHECK(flat.levels == Vector(4, 250.0));

    const Vector series = {4100.5, 4302.25, 4290.0, 4675.125, 5102.0};
    Vector inc(series.size() - 1);
    for (std::size_t t = 1; t < series.size(); ++t) inc[t - 1] = series[t] - series[t - 1];
    const auto path = reconstruct_prices(series[0], inc);
    CHECK(path.levels == Vector(series.begin() + 1, series.end()));
    for (std::size_t t = 1; t < path.levels.size(); ++t)
        CHECK(path.levels[t] == path.levels[t - 1] + path.increments[t]);
}

TEST_CASE("predict_increment: mean row, training rows and a hand-chained example") {
    std::mt19937_64 rng(67);
    const auto names = names_for(4);
    const Matrix x = oracle::random_normal(rng, 25, 4);
    const Vector y = oracle::random_normal(rng, 25, 1).col(0);
    const auto run = run_pcr(names, x, y, 2);

    std::map<std::string, double> mean_row;
    for (std::size_t i = 0; i < 4; ++i) mean_row[names[i]] = run.z.params.means[i];
    CHECK(std::abs(predict_increment(run.fit, run.w, run.z.params, mean_row) - run.fit.intercept) <
          1e-12);

    for (std::size_t t = 0; t < 25; ++t) {
        std::map<std::string, double> row;
        for (std::size_t i = 0; i < 4; ++i) row[names[i]] = x(t, i);
        CHECK(std::abs(predict_increment(run.fit, run.w, run.z.params, row) - run.fit.fitted[t]) <=
              1e-10);
    }

    // z = ((14 − 10)/2, (12 − 20)/4) = (2, −2); score = 0.5·2 − 0.25·2 = 0.5; 3 + 2·0.5 = 4.
    StandardizationParams params{{"a", "b"}, {10, 20}, {2, 4}};
    ScoreWeights w{{"a", "b"}, {"RC1"}, Matrix{{0.5}, {0.25}}, "regression", false};
    OlsFit model;
    model.intercept = 3.0;
    model.names = {"RC1"};
    model.coefficients = {2.0};
    CHECK(predict_increment(model, w, params, {{"a", 14.0}, {"b", 12.0}}) == 4.0);

    try {
        predict_increment(model, w, params, {{"a", 14.0}});
        FAIL("expected NameMismatchError");
    } catch (const NameMismatchError& e) {
        CHECK(e.unmatched() == std::vector<std::string>{"b"});
    }
}

#include "oracles.hpp"
#include "synthetic.hpp"

#include "pcrkit/errors.hpp"
#include "pcrkit/fixtures.hpp"
#include "pcrkit/pca.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace pcrkit;

namespace {

CorrelationMatrix fixture_predictors() {
    const auto r = fixtures::fig3_repaired().matrix;
    return r.select({"REI", "PDS", "PDC", "IR", "GVA", "CPI", "PD", "GDHI"});
}

/// Solution with the given loadings and no eigen data, for rotation tests.
PcaSolution from_loadings(const Matrix& l) {
    PcaSolution s;
    for (std::size_t i = 0; i < l.rows(); ++i) s.names.push_back("v" + std::to_string(i));
    s.k = l.cols();
    s.loadings = l;
    s.rotated_loadings = l;
    s.rotation = Matrix::identity(s.k);
    return s;
}

Matrix rotation2(double angle) {
    return Matrix{{std::cos(angle), -std::sin(angle)}, {std::sin(angle), std::cos(angle)}};
}

CorrelationMatrix random_correlation(std::mt19937_64& rng, std::size_t n, std::size_t p) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < p; ++i) names.push_back("x" + std::to_string(i));
    Matrix x = oracle::random_normal(rng, n, p);
    // Mix columns so the matrix has real structure.
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t c = 1; c < p; ++c) x(t, c) += 0.7 * x(t, c - 1);
    return correlation_matrix(standardize(names, x));
}

} // namespace

TEST_CASE("extract: isotropic matrix has nothing to retain automatically") {
    const CorrelationMatrix id({"a", "b", "c"}, Matrix::identity(3));
    CHECK_THROWS_AS(extract(id), RetentionError);
    CHECK(extract(id, 2).k == 2);
}

TEST_CASE("extract: 2x2 correlation 0.8 with one component") {
    const CorrelationMatrix r({"a", "b"}, Matrix{{1, 0.8}, {0.8, 1}});
    const auto s = extract(r, 1);
    CHECK(s.loadings(0, 0) == doctest::Approx(std::sqrt(0.9)).epsilon(1e-14));
    CHECK(s.loadings(1, 0) == doctest::Approx(std::sqrt(0.9)).epsilon(1e-14));
    CHECK(s.proportion_var[0] == doctest::Approx(0.9).epsilon(1e-14));
    CHECK(s.uniqueness[0] == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("extract: fixture predictors retain two components") {
    const auto s = extract(fixture_predictors());
    CHECK(s.k == 2);
    CHECK(s.eigenvalues[1] > 1.0);
    CHECK(s.eigenvalues[2] < 1.0);
}

TEST_CASE("extract: errors") {
    const CorrelationMatrix r({"a", "b"}, Matrix{{1, 0.8}, {0.8, 1}});
    CHECK_THROWS_AS(extract(r, 0), RetentionError);
    CHECK_THROWS_AS(extract(r, 3), RetentionError);
    CHECK_THROWS_AS(extract(fixtures::fig3_correlation()), NotPositiveDefiniteError);
}

TEST_CASE("extract: solution invariants") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t p = 2 + trial % 6;
        const auto r = random_correlation(rng, 40, p);
        const auto s = extract(r, p);
        double total = 0.0;
        for (double v : s.proportion_var) total += v;
        CHECK(std::abs(total - 1.0) <= 1e-9);
        CHECK(oracle::max_abs_diff(s.loadings * s.loadings.transpose(), r.values()) <= 1e-8);
        for (std::size_t i = 0; i < p; ++i) {
            CHECK(std::abs(s.communality[i] + s.uniqueness[i] - 1.0) <= 1e-8);
            for (std::size_t j = 0; j < p; ++j) CHECK(std::abs(s.loadings(i, j)) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("rotate_varimax: one component is left alone") {
    const CorrelationMatrix r({"a", "b", "c"},
                              Matrix{{1, 0.5, 0.4}, {0.5, 1, 0.3}, {0.4, 0.3, 1}});
    const auto s = extract(r, 1);
    const auto rot = rotate_varimax(s);
    CHECK(rot.rotated_loadings == s.loadings);
    CHECK(rot.rotation == Matrix::identity(1));
}

TEST_CASE("rotate_varimax: simple structure is a fixed point") {
    const Matrix l{{0.9, 0.0}, {0.8, 0.0}, {0.0, 0.7}, {0.0, 0.6}};
    const auto rot = rotate_varimax(from_loadings(l));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK(std::abs(std::abs(rot.rotation(i, j)) - (i == j ? 1.0 : 0.0)) < 1e-12);
    CHECK(oracle::max_abs_diff(rot.rotated_loadings, l) < 1e-12);
}

TEST_CASE("rotate_varimax: recovers a 45 degree rotation of simple structure") {
    const Matrix simple{{0.9, 0.0}, {0.85, 0.0}, {0.0, 0.7}, {0.0, 0.6}};
    const Matrix turned = simple * rotation2(std::numbers::pi / 4.0);
    const auto rot = rotate_varimax(from_loadings(turned));
    CHECK(oracle::max_abs_diff(rot.rotated_loadings, simple) < 1e-6);
    // The recovered rotation undoes the forward one.
    CHECK(oracle::max_abs_diff(rot.rotation, rotation2(-std::numbers::pi / 4.0)) < 1e-6);
}

TEST_CASE("rotate_varimax: orthogonal, monotone and communality preserving") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t p = 5 + trial % 5;
        const auto r = random_correlation(rng, 50, p);
        const std::size_t k = 2 + trial % 3;
        const auto s = extract(r, k);
        const auto rot = rotate_varimax(s);
        CHECK(oracle::max_abs_diff(transpose_times(rot.rotation, rot.rotation),
                                   Matrix::identity(k)) <= 1e-10);
        CHECK(oracle::max_abs_diff(s.loadings * rot.rotation, rot.rotated_loadings) <= 1e-10);
        for (std::size_t i = 1; i < rot.varimax_criterion.size(); ++i)
            CHECK(rot.varimax_criterion[i] >= rot.varimax_criterion[i - 1] - 1e-15);
        for (std::size_t i = 0; i < p; ++i) {
            CHECK(std::abs(rot.communality[i] - s.communality[i]) <= 1e-8);
            CHECK(std::abs(rot.communality[i] + rot.uniqueness[i] - 1.0) <= 1e-8);
        }
        const Matrix before = r.values() - s.loadings * s.loadings.transpose();
        const Matrix after = r.values() - rot.rotated_loadings * rot.rotated_loadings.transpose();
        CHECK(oracle::max_abs_diff(before, after) <= 1e-8);
        for (std::size_t j = 1; j < k; ++j)
            CHECK(rot.rotated_proportion_var[j - 1] >= rot.rotated_proportion_var[j]);
        for (std::size_t j = 0; j < k; ++j) {
            std::size_t lead = 0;
            for (std::size_t i = 1; i < p; ++i)
                if (std::abs(rot.rotated_loadings(i, j)) > std::abs(rot.rotated_loadings(lead, j)))
                    lead = i;
            CHECK(rot.rotated_loadings(lead, j) > 0.0);
        }
    }
}

TEST_CASE("rotate_varimax: raw varimax without row normalization") {
    const Matrix simple{{0.9, 0.0}, {0.85, 0.0}, {0.0, 0.7}, {0.0, 0.6}};
    VarimaxOptions opts;
    opts.kaiser_normalize = false;
    const auto rot = rotate_varimax(from_loadings(simple * rotation2(0.3)), opts);
    CHECK(oracle::max_abs_diff(rot.rotated_loadings, simple) < 1e-6);
}

TEST_CASE("rotate_varimax: sweep cap raises a convergence error") {
    const Matrix simple{{0.9, 0.1}, {0.85, 0.2}, {0.1, 0.7}, {0.3, 0.6}};
    VarimaxOptions opts;
    opts.max_sweeps = 1;
    opts.angle_tolerance = 0.0;
    CHECK_THROWS_AS(rotate_varimax(from_loadings(simple * rotation2(0.4)), opts),
                    ConvergenceError);
}

TEST_CASE("score_weights: identity correlation returns the loadings") {
    const CorrelationMatrix id({"a", "b", "c"}, Matrix::identity(3));
    const auto s = rotate_varimax(extract(id, 2));
    const auto w = score_weights(id, s);
    CHECK(w.weights == s.rotated_loadings);
    CHECK(w.method == "regression");
}

TEST_CASE("score_weights: 2x2 closed-form inverse") {
    const CorrelationMatrix r({"a", "b"}, Matrix{{1, 0.8}, {0.8, 1}});
    const auto s = rotate_varimax(extract(r, 1));
    const auto w = score_weights(r, s);
    // R⁻¹ = [[1, −0.8], [−0.8, 1]]/0.36, loading column √0.9·[1, 1].
    const double expected = (1.0 - 0.8) / 0.36 * std::sqrt(0.9);
    CHECK(w.weights(0, 0) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(w.weights(1, 0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("score_weights: fixture demand component") {
    const auto r = fixture_predictors();
    const auto w = score_weights(r, rotate_varimax(extract(r)));
    const auto at = [&](const std::string& n) {
        const auto i = std::find(w.names.begin(), w.names.end(), n) - w.names.begin();
        return w.weights(static_cast<std::size_t>(i), 0);
    };
    CHECK(at("PD") > 0.0);
    CHECK(at("GVA") > 0.0);
    CHECK(at("GDHI") > 0.0);
    CHECK(std::abs(at("PD") - at("GVA")) < 0.05);
    CHECK(std::abs(at("PD") - at("GDHI")) < 0.05);
    CHECK(std::abs(at("GVA") - at("GDHI")) < 0.05);
    CHECK(at("GVA") == doctest::Approx(0.23).epsilon(0.05));
}

TEST_CASE("score_weights: near-singular matrix needs the ridge opt-in") {
    const CorrelationMatrix r({"a", "b", "c"}, Matrix{{1, 1, 0.2}, {1, 1, 0.2}, {0.2, 0.2, 1}});
    const auto s = rotate_varimax(extract(r, 2));
    CHECK_THROWS_AS(score_weights(r, s), NotPositiveDefiniteError);
    const auto w = score_weights(r, s, true);
    CHECK(w.ridge_applied);
    CHECK(w.weights.all_finite());
}

TEST_CASE("score_weights: variable names must match") {
    const CorrelationMatrix r({"a", "b"}, Matrix{{1, 0.8}, {0.8, 1}});
    const CorrelationMatrix other({"a", "c"}, Matrix{{1, 0.8}, {0.8, 1}});
    CHECK_THROWS_AS(score_weights(other, extract(r, 1)), NameMismatchError);
}

TEST_CASE("component_scores: linearity and identity weights") {
    StandardizedMatrix z;
    z.params.names = {"a", "b"};
    z.params.means = {0, 0};
    z.params.sds = {1, 1};
    z.values = Matrix{{0, 0}, {1, 2}, {-1, 0.5}};
    ScoreWeights w;
    w.names = {"a", "b"};
    w.component_names = {"RC1", "RC2"};
    w.weights = Matrix{{1, 2}, {3, 4}};
    const auto s = component_scores(z, w);
    CHECK(s.values(0, 0) == 0.0);
    CHECK(s.values(0, 1) == 0.0);
    // [1, 2]·W = [1 + 6, 2 + 8]; [−1, 0.5]·W = [−1 + 1.5, −2 + 2].
    CHECK(s.values(1, 0) == 7.0);
    CHECK(s.values(1, 1) == 10.0);
    CHECK(s.values(2, 0) == 0.5);
    CHECK(s.values(2, 1) == 0.0);

    StandardizedMatrix one;
    one.params.names = {"a"};
    one.params.means = {0};
    one.params.sds = {1};
    one.values = Matrix{{-1}, {0}, {1}};
    ScoreWeights unit{{"a"}, {"RC1"}, Matrix{{1.0}}, "regression", false};
    CHECK(component_scores(one, unit).values == one.values);
}

TEST_CASE("component_scores: matches by name and reports mismatches") {
    StandardizedMatrix z;
    z.params.names = {"b", "a"};
    z.params.means = {0, 0};
    z.params.sds = {1, 1};
    z.values = Matrix{{2, 1}};
    ScoreWeights w{{"a", "b"}, {"RC1"}, Matrix{{1}, {10}}, "regression", false};
    CHECK(component_scores(z, w).values(0, 0) == 21.0);

    ScoreWeights bad{{"a", "c"}, {"RC1"}, Matrix{{1}, {1}}, "regression", false};
    try {
        component_scores(z, bad);
        FAIL("expected NameMismatchError");
    } catch (const NameMismatchError& e) {
        CHECK(e.unmatched() == std::vector<std::string>{"c", "b"});
    }
}

TEST_CASE("component_scores: unrotated regression scores are uncorrelated") {
    std::mt19937_64 rng(47);
    const std::vector<std::string> names = {"a", "b", "c", "d", "e"};
    Matrix x = oracle::random_normal(rng, 60, 5);
    for (std::size_t t = 0; t < 60; ++t) x(t, 1) += x(t, 0);
    const auto z = standardize(names, x);
    const auto r = correlation_matrix(z);
    const auto s = extract(r, 3);
    const auto scores = component_scores(z, score_weights(r, s));
    const Matrix c = (1.0 / 59.0) * transpose_times(scores.values, scores.values);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(std::abs(c(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-6);
}

TEST_CASE("planted two-factor data is recovered by rotation") {
    const auto data = synthetic::planted_two_factor(1, 200, 0.1);
    const auto r = correlation_matrix(standardize(data.names, data.values));
    const auto s = rotate_varimax(extract(r));
    REQUIRE(s.k == 2);
    const double direct = std::min(
        std::abs(oracle::congruence(s.rotated_loadings.col(0), data.planted.col(0))),
        std::abs(oracle::congruence(s.rotated_loadings.col(1), data.planted.col(1))));
    const double swapped = std::min(
        std::abs(oracle::congruence(s.rotated_loadings.col(0), data.planted.col(1))),
        std::abs(oracle::congruence(s.rotated_loadings.col(1), data.planted.col(0))));
    CHECK(std::max(direct, swapped) > 0.95);
}

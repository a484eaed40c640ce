#include "pcrkit/pca.hpp"

#include "pcrkit/errors.hpp"
#include "pcrkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pcrkit {

namespace {

Vector column_sum_squares(const Matrix& l) {
    Vector ss(l.cols(), 0.0);
    for (std::size_t i = 0; i < l.rows(); ++i)
        for (std::size_t j = 0; j < l.cols(); ++j) ss[j] += l(i, j) * l(i, j);
    return ss;
}

Vector row_sum_squares(const Matrix& l) {
    Vector ss(l.rows(), 0.0);
    for (std::size_t i = 0; i < l.rows(); ++i)
        for (double v : l.row(i)) ss[i] += v * v;
    return ss;
}

Vector cumulative(const Vector& v) {
    Vector out(v.size());
    std::partial_sum(v.begin(), v.end(), out.begin());
    return out;
}

void fill_rotated_summary(PcaSolution& s) {
    const double p = static_cast<double>(s.names.size());
    s.rotated_proportion_var = column_sum_squares(s.rotated_loadings);
    for (double& v : s.rotated_proportion_var) v /= p;
    s.rotated_cumulative_var = cumulative(s.rotated_proportion_var);
    s.communality = row_sum_squares(s.rotated_loadings);
    s.uniqueness.resize(s.communality.size());
    for (std::size_t i = 0; i < s.communality.size(); ++i) s.uniqueness[i] = 1.0 - s.communality[i];
}

void rotate_pair(Matrix& m, std::size_t a, std::size_t b, double c, double s) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double x = m(i, a);
        const double y = m(i, b);
        m(i, a) = c * x + s * y;
        m(i, b) = -s * x + c * y;
    }
}

} // namespace

std::vector<std::string> PcaSolution::component_names() const {
    const std::string prefix = rotation_method == "none" ? "PC" : "RC";
    std::vector<std::string> out;
    for (std::size_t j = 0; j < k; ++j) out.push_back(prefix + std::to_string(j + 1));
    return out;
}

PcaSolution extract(const CorrelationMatrix& r, std::optional<std::size_t> k) {
    const std::size_t p = r.size();
    const EigenDecomposition eig = eigen_symmetric(r.values());
    if (eig.values.back() < -kPsdTolerance)
        throw NotPositiveDefiniteError("correlation matrix is not positive semi-definite",
                                       eig.values.back());

    std::size_t keep;
    if (k) {
        if (*k < 1 || *k > p)
            throw RetentionError("component count " + std::to_string(*k) + " outside [1, " +
                                 std::to_string(p) + "]");
        keep = *k;
    } else {
        keep = static_cast<std::size_t>(
            std::count_if(eig.values.begin(), eig.values.end(), [](double l) { return l > 1.0; }));
        if (keep == 0)
            throw RetentionError("no eigenvalue exceeds 1; set the component count explicitly");
    }

    PcaSolution s;
    s.names = r.names();
    s.k = keep;
    s.eigenvalues = eig.values;
    s.proportion_var.resize(p);
    for (std::size_t j = 0; j < p; ++j) s.proportion_var[j] = eig.values[j] / static_cast<double>(p);
    s.cumulative_var = cumulative(s.proportion_var);

    s.loadings = Matrix(p, keep);
    for (std::size_t j = 0; j < keep; ++j) {
        const double root = std::sqrt(std::max(eig.values[j], 0.0));
        for (std::size_t i = 0; i < p; ++i) s.loadings(i, j) = root * eig.vectors(i, j);
    }
    s.rotation_method = "none";
    s.rotated_loadings = s.loadings;
    s.rotation = Matrix::identity(keep);
    fill_rotated_summary(s);
    return s;
}

double varimax_criterion(const Matrix& loadings) {
    const double p = static_cast<double>(loadings.rows());
    double total = 0.0;
    for (std::size_t j = 0; j < loadings.cols(); ++j) {
        double s2 = 0.0, s4 = 0.0;
        for (std::size_t i = 0; i < loadings.rows(); ++i) {
            const double sq = loadings(i, j) * loadings(i, j);
            s2 += sq;
            s4 += sq * sq;
        }
        total += s4 / p - (s2 / p) * (s2 / p);
    }
    return total;
}

PcaSolution rotate_varimax(const PcaSolution& solution, const VarimaxOptions& options) {
    PcaSolution s = solution;
    s.rotation_method = "varimax";
    s.varimax_criterion.clear();
    s.rotation_sweeps = 0;
    const std::size_t p = s.loadings.rows();
    const std::size_t k = s.k;
    if (k <= 1) {
        s.rotated_loadings = s.loadings;
        s.rotation = Matrix::identity(k);
        fill_rotated_summary(s);
        return s;
    }

    Vector h(p, 1.0);
    if (options.kaiser_normalize) {
        h = row_sum_squares(s.loadings);
        for (double& v : h) v = std::sqrt(v);
    }
    Matrix a = s.loadings;
    for (std::size_t i = 0; i < p; ++i)
        if (h[i] > 0.0)
            for (double& v : a.row(i)) v /= h[i];
    Matrix t = Matrix::identity(k);

    const double np = static_cast<double>(p);
    bool converged = false;
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
        double largest_angle = 0.0;
        for (std::size_t c1 = 0; c1 + 1 < k; ++c1)
            for (std::size_t c2 = c1 + 1; c2 < k; ++c2) {
                // Kaiser's closed-form optimal angle for the (c1, c2) plane.
                double su = 0.0, sv = 0.0, suv2 = 0.0, suv = 0.0;
                for (std::size_t i = 0; i < p; ++i) {
                    const double x = a(i, c1), y = a(i, c2);
                    const double u = x * x - y * y;
                    const double v = 2.0 * x * y;
                    su += u;
                    sv += v;
                    suv2 += u * u - v * v;
                    suv += 2.0 * u * v;
                }
                const double num = suv - 2.0 * su * sv / np;
                const double den = suv2 - (su * su - sv * sv) / np;
                const double phi = 0.25 * std::atan2(num, den);
                largest_angle = std::max(largest_angle, std::abs(phi));
                if (phi == 0.0) continue;
                const double c = std::cos(phi), sn = std::sin(phi);
                rotate_pair(a, c1, c2, c, sn);
                rotate_pair(t, c1, c2, c, sn);
            }
        ++s.rotation_sweeps;
        s.varimax_criterion.push_back(varimax_criterion(a));
        if (largest_angle < options.angle_tolerance) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        const Vector& c = s.varimax_criterion;
        const double delta = c.size() >= 2 ? c.back() - c[c.size() - 2] : 0.0;
        throw ConvergenceError("varimax did not converge in " +
                                   std::to_string(options.max_sweeps) + " sweeps",
                               delta);
    }

    for (std::size_t i = 0; i < p; ++i)
        for (double& v : a.row(i)) v *= h[i];

    // Order columns by explained variance, then fix signs.
    const Vector ss = column_sum_squares(a);
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return ss[x] > ss[y]; });
    s.rotated_loadings = Matrix(p, k);
    s.rotation = Matrix(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t src = order[j];
        std::size_t lead = 0;
        for (std::size_t i = 1; i < p; ++i)
            if (std::abs(a(i, src)) > std::abs(a(lead, src))) lead = i;
        const double sign = a(lead, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < p; ++i) s.rotated_loadings(i, j) = sign * a(i, src);
        for (std::size_t i = 0; i < k; ++i) s.rotation(i, j) = sign * t(i, src);
    }
    fill_rotated_summary(s);
    return s;
}

ScoreWeights score_weights(const CorrelationMatrix& r, const PcaSolution& solution,
                           bool allow_ridge) {
    if (r.names() != solution.names) {
        std::vector<std::string> unmatched;
        for (const auto& n : r.names())
            if (std::find(solution.names.begin(), solution.names.end(), n) == solution.names.end())
                unmatched.push_back(n);
        for (const auto& n : solution.names)
            if (std::find(r.names().begin(), r.names().end(), n) == r.names().end())
                unmatched.push_back(n);
        if (unmatched.empty()) unmatched.push_back("(variable order differs)");
        throw NameMismatchError(unmatched);
    }
    ScoreWeights w;
    w.names = solution.names;
    w.component_names = solution.component_names();

    Matrix system = r.values();
    const double smallest = r.smallest_eigenvalue();
    if (smallest <= kSpdTolerance) {
        if (!allow_ridge)
            throw NotPositiveDefiniteError(
                "correlation matrix is near-singular; enable the 1e-8 diagonal ridge to "
                "compute score weights",
                smallest);
        for (std::size_t i = 0; i < system.rows(); ++i) system(i, i) += kScoreRidge;
        w.ridge_applied = true;
    }
    w.weights = invert_spd(system) * solution.rotated_loadings;
    return w;
}

ComponentScores component_scores(const StandardizedMatrix& z, const ScoreWeights& w) {
    std::vector<std::size_t> col_for_weight_row;
    std::vector<std::string> unmatched;
    for (const auto& n : w.names) {
        const auto it = std::find(z.names().begin(), z.names().end(), n);
        if (it == z.names().end())
            unmatched.push_back(n);
        else
            col_for_weight_row.push_back(static_cast<std::size_t>(it - z.names().begin()));
    }
    for (const auto& n : z.names())
        if (std::find(w.names.begin(), w.names.end(), n) == w.names.end()) unmatched.push_back(n);
    if (!unmatched.empty()) throw NameMismatchError(unmatched);

    const std::size_t n = z.values.rows();
    const std::size_t k = w.weights.cols();
    ComponentScores out;
    out.component_names = w.component_names;
    out.values = Matrix(n, k);
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t j = 0; j < k; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < w.names.size(); ++i)
                s += z.values(t, col_for_weight_row[i]) * w.weights(i, j);
            out.values(t, j) = s;
        }
    return out;
}

} // namespace pcrkit

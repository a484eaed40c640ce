#include "pcrkit/linalg.hpp"

#include "pcrkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pcrkit {

void require_symmetric(const Matrix& a, double tolerance) {
    if (!a.is_square())
        throw DimensionError("matrix must be square, got " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()));
    std::size_t wi = 0, wj = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            const double d = std::abs(a(i, j) - a(j, i));
            if (d > worst) {
                worst = d;
                wi = i;
                wj = j;
            }
        }
    if (worst > tolerance) throw AsymmetryError(wi, wj, worst);
}

namespace {

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
}

void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
    const double apq = a(p, q);
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const std::size_t n = a.rows();

    for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        const double akp = a(k, p);
        const double akq = a(k, q);
        a(k, p) = a(p, k) = c * akp - s * akq;
        a(k, q) = a(q, k) = s * akp + c * akq;
    }
    a(p, p) -= t * apq;
    a(q, q) += t * apq;
    a(p, q) = a(q, p) = 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        const double vkp = v(k, p);
        const double vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

} // namespace

EigenDecomposition eigen_symmetric(const Matrix& a) {
    require_finite(a);
    require_symmetric(a);
    const std::size_t n = a.rows();

    Matrix work(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) work(i, j) = 0.5 * (a(i, j) + a(j, i));
    Matrix v = Matrix::identity(n);

    const double threshold = kJacobiTolerance * work.norm_frobenius();
    int sweeps = 0;
    double off = off_diagonal_norm(work);
    while (off > threshold) {
        if (sweeps == kJacobiMaxSweeps)
            throw ConvergenceError("Jacobi eigensolver did not converge in " +
                                       std::to_string(kJacobiMaxSweeps) + " sweeps",
                                   off);
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (work(p, q) != 0.0) rotate(work, v, p, q);
        ++sweeps;
        off = off_diagonal_norm(work);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return work(i, i) > work(j, j); });

    EigenDecomposition out;
    out.sweeps = sweeps;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t src = order[c];
        out.values[c] = work(src, src);
        std::size_t lead = 0;
        for (std::size_t r = 1; r < n; ++r)
            if (std::abs(v(r, src)) > std::abs(v(lead, src))) lead = r;
        const double sign = v(lead, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = sign * v(r, src);
    }
    return out;
}

LeastSquaresSolution least_squares(const Matrix& design, std::span<const double> response,
                                   RankPolicy policy) {
    const std::size_t n = design.rows();
    const std::size_t p = design.cols();
    if (response.size() != n)
        throw DimensionError("response has " + std::to_string(response.size()) +
                             " entries, design has " + std::to_string(n) + " rows");
    if (n < p)
        throw DimensionError("least squares needs at least as many rows as columns (" +
                             std::to_string(n) + " < " + std::to_string(p) + ")");
    require_finite(design);
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(response[i])) throw NonFiniteError(i, 0);

    Matrix a = design;
    Vector b(response.begin(), response.end());
    std::vector<std::size_t> kept;
    LeastSquaresSolution out;

    // Householder vectors are applied immediately to the remaining columns and b.
    std::size_t k = 0; // current row / rank
    for (std::size_t j = 0; j < p; ++j) {
        const double column_norm = norm2(design.col(j));
        Vector x(n - k);
        for (std::size_t i = k; i < n; ++i) x[i - k] = a(i, j);
        const double alpha_norm = norm2(x);
        if (k == n || alpha_norm <= kRankTolerance * column_norm || column_norm == 0.0) {
            if (policy == RankPolicy::Throw)
                throw RankDeficiencyError(j, column_norm == 0.0 ? 0.0 : alpha_norm / column_norm);
            out.dropped.push_back(j);
            continue;
        }
        const double alpha = x[0] > 0.0 ? -alpha_norm : alpha_norm;
        x[0] -= alpha;
        const double vnorm2 = dot(x, x);
        for (std::size_t jj = j; jj < p; ++jj) {
            double s = 0.0;
            for (std::size_t i = k; i < n; ++i) s += x[i - k] * a(i, jj);
            s = 2.0 * s / vnorm2;
            for (std::size_t i = k; i < n; ++i) a(i, jj) -= s * x[i - k];
        }
        double s = 0.0;
        for (std::size_t i = k; i < n; ++i) s += x[i - k] * b[i];
        s = 2.0 * s / vnorm2;
        for (std::size_t i = k; i < n; ++i) b[i] -= s * x[i - k];
        a(k, j) = alpha;
        for (std::size_t i = k + 1; i < n; ++i) a(i, j) = 0.0;
        kept.push_back(j);
        ++k;
    }

    // Back substitution on the kept columns; row r of R holds pivot for kept[r].
    out.coefficients.assign(p, 0.0);
    const std::size_t rank = kept.size();
    Vector beta(rank, 0.0);
    for (std::size_t r = rank; r-- > 0;) {
        double s = b[r];
        for (std::size_t c = r + 1; c < rank; ++c) s -= a(r, kept[c]) * beta[c];
        beta[r] = s / a(r, kept[r]);
    }
    for (std::size_t r = 0; r < rank; ++r) out.coefficients[kept[r]] = beta[r];

    out.residuals.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.residuals[i] = response[i] - dot(design.row(i), out.coefficients);
    return out;
}

Vector solve_least_squares(const Matrix& design, std::span<const double> response) {
    return least_squares(design, response, RankPolicy::Throw).coefficients;
}

Matrix invert_spd(const Matrix& a) {
    const EigenDecomposition eig = eigen_symmetric(a);
    const double smallest = eig.values.empty() ? 0.0 : eig.values.back();
    if (eig.values.empty() || smallest <= kSpdTolerance)
        throw NotPositiveDefiniteError("matrix is not positive definite", smallest);

    const std::size_t n = a.rows();
    // Cholesky a = L·Lᵀ on the symmetrized input.
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (d <= 0.0) throw NotPositiveDefiniteError("Cholesky factorization failed", smallest);
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = 0.5 * (a(i, j) + a(j, i));
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    // Solve L·Lᵀ·X = I column by column.
    Matrix inv(n, n);
    Vector y(n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = i == c ? 1.0 : 0.0;
            for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
            y[i] = s / l(i, i);
        }
        for (std::size_t i = n; i-- > 0;) {
            double s = y[i];
            for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * inv(k, c);
            inv(i, c) = s / l(i, i);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) inv(i, j) = inv(j, i) = 0.5 * (inv(i, j) + inv(j, i));
    return inv;
}

} // namespace pcrkit

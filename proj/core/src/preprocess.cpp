#include "pcrkit/preprocess.hpp"

#include "pcrkit/errors.hpp"
#include "pcrkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pcrkit {

TimeSeriesTable difference(const TimeSeriesTable& table, DiffMode mode) {
    if (mode == DiffMode::Off) return table;
    const std::size_t n = table.n_years();
    if (n < 3)
        throw InsufficientDataError("differencing needs at least 3 years, got " +
                                    std::to_string(n));
    const Matrix& v = table.values();
    Matrix out(n - 1, table.n_vars());
    for (std::size_t t = 1; t < n; ++t)
        for (std::size_t c = 0; c < table.n_vars(); ++c) {
            const double prev = v(t - 1, c);
            const double delta = v(t, c) - prev;
            if (mode == DiffMode::Percent) {
                if (prev == 0.0)
                    throw ValidationError("percent change undefined for column '" +
                                          table.names()[c] + "' at year " +
                                          std::to_string(table.years()[t]) +
                                          ": previous value is zero");
                out(t - 1, c) = 100.0 * delta / prev;
            } else {
                out(t - 1, c) = delta;
            }
        }
    std::vector<int> years(table.years().begin() + 1, table.years().end());
    return TimeSeriesTable(std::move(years), table.names(), std::move(out), table.response());
}

TimeSeriesTable cumulative_sum(const TimeSeriesTable& increments,
                               std::span<const double> first_row, int first_year) {
    const std::size_t p = increments.n_vars();
    if (first_row.size() != p) throw DimensionError("seed row length does not match table width");
    const std::size_t n = increments.n_years() + 1;
    Matrix out(n, p);
    for (std::size_t c = 0; c < p; ++c) out(0, c) = first_row[c];
    for (std::size_t t = 1; t < n; ++t)
        for (std::size_t c = 0; c < p; ++c)
            out(t, c) = out(t - 1, c) + increments.values()(t - 1, c);
    std::vector<int> years(n);
    std::iota(years.begin(), years.end(), first_year);
    return TimeSeriesTable(std::move(years), increments.names(), std::move(out),
                           increments.response());
}

Vector StandardizationParams::apply(std::span<const double> row) const {
    if (row.size() != means.size()) throw DimensionError("row length does not match parameters");
    Vector out(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) out[i] = (row[i] - means[i]) / sds[i];
    return out;
}

Matrix StandardizedMatrix::destandardize() const {
    Matrix out = values;
    for (std::size_t r = 0; r < out.rows(); ++r)
        for (std::size_t c = 0; c < out.cols(); ++c)
            out(r, c) = values(r, c) * params.sds[c] + params.means[c];
    return out;
}

StandardizedMatrix standardize(const std::vector<std::string>& names, const Matrix& values) {
    if (names.size() != values.cols()) throw DimensionError("name count does not match columns");
    const std::size_t n = values.rows();
    if (n < 2) throw InsufficientDataError("standardization needs at least 2 observations");
    require_finite(values);

    StandardizedMatrix out;
    out.params.names = names;
    out.params.means.resize(values.cols());
    out.params.sds.resize(values.cols());
    out.values = Matrix(n, values.cols());
    for (std::size_t c = 0; c < values.cols(); ++c) {
        const Vector x = values.col(c);
        const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
        double ss = 0.0;
        for (double v : x) ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        // Rounding of the mean leaves ~1e-16 relative noise in a constant column.
        if (!(sd > 1e-13 * max_abs(x))) throw ZeroVarianceError(names[c]);
        out.params.means[c] = mean;
        out.params.sds[c] = sd;
        for (std::size_t r = 0; r < n; ++r) out.values(r, c) = (x[r] - mean) / sd;
    }
    return out;
}

StandardizedMatrix standardize(const TimeSeriesTable& table) {
    return standardize(table.names(), table.values());
}

CorrelationMatrix::CorrelationMatrix(std::vector<std::string> names, Matrix values)
    : names_(std::move(names)), values_(std::move(values)) {
    if (values_.rows() != names_.size() || !values_.is_square())
        throw DimensionError("correlation matrix must be square with one name per variable");
    require_finite(values_);
    require_symmetric(values_);
    constexpr double tol = 1e-9;
    const std::size_t p = names_.size();
    for (std::size_t i = 0; i < p; ++i) {
        if (std::abs(values_(i, i) - 1.0) > tol)
            throw ValidationError("correlation diagonal entry for '" + names_[i] + "' is not 1");
        values_(i, i) = 1.0;
        for (std::size_t j = i + 1; j < p; ++j) {
            double v = 0.5 * (values_(i, j) + values_(j, i));
            if (std::abs(v) > 1.0 + tol)
                throw ValidationError("correlation between '" + names_[i] + "' and '" + names_[j] +
                                      "' is outside [-1, 1]");
            v = std::clamp(v, -1.0, 1.0);
            values_(i, j) = values_(j, i) = v;
        }
    }
}

double CorrelationMatrix::smallest_eigenvalue() const {
    const auto eig = eigen_symmetric(values_);
    return eig.values.back();
}

CorrelationMatrix CorrelationMatrix::select(const std::vector<std::string>& names) const {
    std::vector<std::size_t> idx;
    std::vector<std::string> missing;
    for (const auto& n : names) {
        const auto it = std::find(names_.begin(), names_.end(), n);
        if (it == names_.end())
            missing.push_back(n);
        else
            idx.push_back(static_cast<std::size_t>(it - names_.begin()));
    }
    if (!missing.empty()) throw NameMismatchError(missing);
    return CorrelationMatrix(names, values_.select(idx, idx));
}

CorrelationMatrix correlation_matrix(const StandardizedMatrix& m) {
    const std::size_t n = m.values.rows();
    if (n < 2) throw InsufficientDataError("correlation needs at least 2 observations");
    Matrix r = transpose_times(m.values, m.values);
    const double scale = 1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < r.rows(); ++i) {
        r(i, i) = 1.0;
        for (std::size_t j = i + 1; j < r.cols(); ++j) {
            const double v = std::clamp(0.5 * (r(i, j) + r(j, i)) * scale, -1.0, 1.0);
            r(i, j) = r(j, i) = v;
        }
    }
    return CorrelationMatrix(m.names(), std::move(r));
}

CorrelationRepair nearest_correlation(const CorrelationMatrix& r, double eigen_floor) {
    if (r.smallest_eigenvalue() >= eigen_floor) return {r, 0, 0.0};

    const std::size_t p = r.size();
    constexpr int max_iterations = 10000;
    constexpr double tolerance = 1e-14;
    Matrix y = r.values();
    Matrix correction(p, p);
    int it = 0;
    for (; it < max_iterations; ++it) {
        const Matrix shifted = y - correction;
        const auto eig = eigen_symmetric(shifted);
        Matrix x(p, p);
        for (std::size_t k = 0; k < p; ++k) {
            const double lambda = std::max(eig.values[k], eigen_floor);
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t j = 0; j < p; ++j)
                    x(i, j) += lambda * eig.vectors(i, k) * eig.vectors(j, k);
        }
        correction = x - shifted;
        for (std::size_t i = 0; i < p; ++i) x(i, i) = 1.0;
        const double change = (x - y).max_abs();
        y = std::move(x);
        if (change < tolerance) break;
    }
    if (it == max_iterations)
        throw ConvergenceError("nearest-correlation projection did not converge", 0.0);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j) y(i, j) = y(j, i) = 0.5 * (y(i, j) + y(j, i));
    const double adjustment = (y - r.values()).max_abs();
    return {CorrelationMatrix(r.names(), std::move(y)), it + 1, adjustment};
}

std::vector<ScatterBlock> scatter_matrix_export(const TimeSeriesTable& table) {
    std::vector<std::size_t> order(table.n_vars());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return table.names()[a] < table.names()[b]; });
    std::vector<ScatterBlock> blocks;
    for (std::size_t a = 0; a < order.size(); ++a)
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            ScatterBlock blk;
            blk.x_name = table.names()[order[a]];
            blk.y_name = table.names()[order[b]];
            blk.years = table.years();
            blk.x = table.values().col(order[a]);
            blk.y = table.values().col(order[b]);
            blocks.push_back(std::move(blk));
        }
    return blocks;
}

bool VifEntry::infinite() const noexcept { return std::isinf(value); }

std::vector<VifEntry> vif(const StandardizedMatrix& m) {
    const std::size_t n = m.values.rows();
    const std::size_t p = m.values.cols();
    if (n < p + 1)
        throw InsufficientDataError("VIF needs at least " + std::to_string(p + 1) +
                                    " observations for " + std::to_string(p) + " variables");
    std::vector<VifEntry> out;
    for (std::size_t i = 0; i < p; ++i) {
        Matrix design(n, p);
        for (std::size_t r = 0; r < n; ++r) {
            design(r, 0) = 1.0;
            std::size_t c = 1;
            for (std::size_t j = 0; j < p; ++j)
                if (j != i) design(r, c++) = m.values(r, j);
        }
        const Vector y = m.values.col(i);
        const auto fit = least_squares(design, y, RankPolicy::DropDependent);
        const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
        double sse = 0.0, sst = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            sse += fit.residuals[r] * fit.residuals[r];
            sst += (y[r] - mean) * (y[r] - mean);
        }
        const double r2 = std::clamp(1.0 - sse / sst, 0.0, 1.0);
        VifEntry e;
        e.name = m.names()[i];
        e.r_squared = r2;
        e.value = r2 >= 1.0 - 1e-12 ? std::numeric_limits<double>::infinity() : 1.0 / (1.0 - r2);
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace pcrkit

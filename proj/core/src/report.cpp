#include "pcrkit/csv.hpp"
#include "pcrkit/errors.hpp"
#include "pcrkit/pipeline.hpp"

#include <fstream>
#include <sstream>

namespace pcrkit {

namespace {

const char* diff_name(DiffMode m) {
    switch (m) {
    case DiffMode::Absolute: return "absolute";
    case DiffMode::Percent: return "percent";
    case DiffMode::Off: return "off";
    }
    return "unknown";
}

std::string status_line(const Report& r) {
    if (!r.failure) return "complete";
    return std::string("failed at stage ") + stage_name(r.failure->stage) + ": " +
           r.failure->message;
}

/// Sink that renders the same content as either a sectioned text file or a
/// long-format CSV (section,row,column,value).
class Writer {
public:
    explicit Writer(ReportFormat f) : format_(f) {
        if (format_ == ReportFormat::Delimited) out_ << "section,row,column,value\n";
    }

    void section(const std::string& name) {
        section_ = name;
        if (format_ == ReportFormat::Text) {
            if (out_.tellp() > 0) out_ << '\n';
            out_ << '[' << name << "]\n";
        }
    }

    void field(const std::string& key, const std::string& value) {
        if (format_ == ReportFormat::Text)
            out_ << key << ": " << value << '\n';
        else
            out_ << section_ << ',' << quote(key) << ",," << quote(value) << '\n';
    }
    void field(const std::string& key, double value) { field(key, format_number(value)); }

    /// Table with named rows and columns.
    void table(const std::vector<std::string>& row_names, const std::vector<std::string>& col_names,
               const Matrix& values, const std::string& corner = "variable") {
        if (format_ == ReportFormat::Text) {
            out_ << corner;
            for (const auto& c : col_names) out_ << ' ' << c;
            out_ << '\n';
            for (std::size_t i = 0; i < row_names.size(); ++i) {
                out_ << row_names[i];
                for (std::size_t j = 0; j < col_names.size(); ++j)
                    out_ << ' ' << format_number(values(i, j));
                out_ << '\n';
            }
        } else {
            for (std::size_t i = 0; i < row_names.size(); ++i)
                for (std::size_t j = 0; j < col_names.size(); ++j)
                    out_ << section_ << ',' << quote(row_names[i]) << ',' << quote(col_names[j])
                         << ',' << format_number(values(i, j)) << '\n';
        }
    }

    std::string str() const { return out_.str(); }

private:
    static std::string quote(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c == '\n' ? ' ' : c;
        }
        return q + "\"";
    }

    ReportFormat format_;
    std::string section_ = "meta";
    std::ostringstream out_;
};

Matrix columns(const std::vector<Vector>& cols) { return Matrix::from_columns(cols); }

std::vector<std::string> year_labels(const std::vector<int>& years) {
    std::vector<std::string> out;
    for (int y : years) out.push_back(std::to_string(y));
    return out;
}

void write_fit(Writer& w, const OlsFit& fit) {
    w.field("intercept", fit.intercept);
    for (std::size_t j = 0; j < fit.names.size(); ++j) w.field(fit.names[j], fit.coefficients[j]);
    w.field("r_squared", fit.r_squared);
    w.field("residual_se", fit.residual_se);
    for (const auto& warn : fit.warnings) w.field("warning", warn);
}

} // namespace

std::string render_report(const Report& r, ReportFormat format) {
    Writer w(format);
    w.section("meta");
    w.field("mode", r.mode);
    w.field("source", r.source);
    w.field("response", r.response);
    w.field("differencing", diff_name(r.diff));
    w.field("status", status_line(r));
    for (const auto& n : r.notes) w.field("note", n);

    if (r.correlation) {
        w.section("correlation");
        w.table(r.correlation->names(), r.correlation->names(), r.correlation->values());
    }
    if (r.repair) {
        w.section("correlation_repair");
        w.field("iterations", std::to_string(r.repair->iterations));
        w.field("max_adjustment", r.repair->max_adjustment);
    }
    if (!r.vif.empty()) {
        w.section("vif");
        std::vector<std::string> names;
        Vector vals, r2;
        for (const auto& e : r.vif) {
            names.push_back(e.name);
            vals.push_back(e.value);
            r2.push_back(e.r_squared);
        }
        w.table(names, {"vif", "r_squared"}, columns({vals, r2}));
    }
    if (r.mode == "table" && r.analyzed) {
        w.section("baseline_ols");
        if (r.baseline_ols) {
            w.field("status", "ok");
            write_fit(w, *r.baseline_ols);
        } else {
            w.field("status", "error");
            w.field("error", r.baseline_ols_error);
        }
    }
    if (r.pca) {
        const PcaSolution& s = *r.pca;
        w.section("eigenvalues");
        std::vector<std::string> idx;
        for (std::size_t j = 0; j < s.eigenvalues.size(); ++j) idx.push_back(std::to_string(j + 1));
        w.table(idx, {"eigenvalue", "proportion_var", "cumulative_var"},
                columns({s.eigenvalues, s.proportion_var, s.cumulative_var}), "component");

        w.section("loadings");
        std::vector<std::string> pcs;
        for (std::size_t j = 0; j < s.k; ++j) pcs.push_back("PC" + std::to_string(j + 1));
        w.table(s.names, pcs, s.loadings);

        w.section("rotated_loadings");
        w.field("method", s.rotation_method);
        w.field("sweeps", std::to_string(s.rotation_sweeps));
        auto cols = s.component_names();
        Matrix rot(s.names.size(), s.k + 2);
        for (std::size_t i = 0; i < s.names.size(); ++i) {
            for (std::size_t j = 0; j < s.k; ++j) rot(i, j) = s.rotated_loadings(i, j);
            rot(i, s.k) = s.communality[i];
            rot(i, s.k + 1) = s.uniqueness[i];
        }
        auto rot_cols = cols;
        rot_cols.push_back("h2");
        rot_cols.push_back("u2");
        w.table(s.names, rot_cols, rot);

        w.section("rotation_matrix");
        w.table(pcs, cols, s.rotation, "from");

        w.section("rotated_variance");
        Vector ssl(s.k);
        for (std::size_t j = 0; j < s.k; ++j)
            ssl[j] = s.rotated_proportion_var[j] * static_cast<double>(s.names.size());
        w.table(cols, {"ss_loadings", "proportion_var", "cumulative_var"},
                columns({ssl, s.rotated_proportion_var, s.rotated_cumulative_var}), "component");
    }
    if (r.weights) {
        w.section("score_weights");
        w.field("method", r.weights->method);
        w.field("ridge", r.weights->ridge_applied ? "yes" : "no");
        w.table(r.weights->names, r.weights->component_names, r.weights->weights);
    }
    if (r.predictor_params) {
        w.section("standardization");
        w.table(r.predictor_params->names, {"mean", "sd"},
                columns({r.predictor_params->means, r.predictor_params->sds}));
    }
    if (r.scores && r.analyzed) {
        w.section("component_scores");
        w.table(year_labels(r.analyzed->years()), r.scores->component_names, r.scores->values,
                "year");
    }
    if (r.pcr) {
        w.section("pcr");
        write_fit(w, *r.pcr);
        w.section("pcr_residuals");
        w.table(year_labels(r.analyzed->years()), {"fitted", "residual"},
                columns({r.pcr->fitted, r.pcr->residuals}), "year");
    }
    if (r.price_path) {
        w.section("price_path");
        w.field("base", r.price_path->base);
        w.table(year_labels(r.analyzed->years()),
                {"observed", "fitted_increment", "reconstructed", "one_step"},
                columns({r.observed_levels, r.price_path->increments, r.price_path->levels,
                         r.one_step_levels}),
                "year");
    }
    return w.str();
}

std::string render_scatter(const std::vector<ScatterBlock>& blocks, ReportFormat format) {
    std::ostringstream out;
    if (format == ReportFormat::Delimited) {
        out << "x_var,y_var,year,x,y\n";
        for (const auto& b : blocks)
            for (std::size_t i = 0; i < b.years.size(); ++i)
                out << b.x_name << ',' << b.y_name << ',' << b.years[i] << ','
                    << format_number(b.x[i]) << ',' << format_number(b.y[i]) << '\n';
    } else {
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            const auto& b = blocks[k];
            if (k) out << '\n';
            out << "[" << b.x_name << " " << b.y_name << "]\n";
            out << "year x y\n";
            for (std::size_t i = 0; i < b.years.size(); ++i)
                out << b.years[i] << ' ' << format_number(b.x[i]) << ' ' << format_number(b.y[i])
                    << '\n';
        }
    }
    return out.str();
}

std::vector<std::filesystem::path> emit_report(const Report& report, const RunConfig& config) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw IoError(config.out_dir.string(), "cannot create directory: " + ec.message());

    const std::string ext = config.format == ReportFormat::Text ? ".txt" : ".csv";
    std::vector<std::pair<fs::path, std::string>> files;
    files.emplace_back(config.out_dir / ("report" + ext), render_report(report, config.format));
    if (report.mode == "table" && report.analyzed)
        files.emplace_back(config.out_dir / ("scatter_pairs" + ext),
                           render_scatter(scatter_matrix_export(*report.analyzed), config.format));

    std::vector<fs::path> written;
    for (const auto& [path, content] : files) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError(path.string(), "cannot open for writing");
        out << content;
        out.close();
        if (!out) throw IoError(path.string(), "write failed");
        written.push_back(path);
    }
    return written;
}

} // namespace pcrkit

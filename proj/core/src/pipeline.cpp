#include "pcrkit/pipeline.hpp"

#include "pcrkit/errors.hpp"
#include "pcrkit/fixtures.hpp"

#include <algorithm>

namespace pcrkit {

const char* stage_name(Stage s) noexcept {
    switch (s) {
    case Stage::Input: return "input";
    case Stage::Preprocess: return "preprocess";
    case Stage::Pca: return "pca";
    case Stage::Regression: return "regression";
    case Stage::Io: return "io";
    }
    return "unknown";
}

void RunConfig::validate() const {
    const int sources = int(input_path.has_value()) + int(fixture.has_value()) +
                        int(table.has_value());
    if (sources != 1) throw ConfigError("exactly one input source must be selected");
    if (components && *components < 1) throw ConfigError("component count must be at least 1");
    if (score_method != "regression")
        throw ConfigError("unsupported score method '" + score_method + "'");
    if (fixture && *fixture != "fig3") throw ConfigError("unknown fixture '" + *fixture + "'");
    if (response.empty()) throw ConfigError("response name must not be empty");
}

namespace {

// Runs `body`; on a library error records the failure and returns false.
template <typename F>
bool stage(Report& report, Stage s, F&& body) {
    try {
        body();
        return true;
    } catch (const Error& e) {
        report.failure = StageFailure{s, e.what()};
        return false;
    }
}

void run_pca(Report& report, const RunConfig& config) {
    PcaSolution solution = extract(*report.predictor_correlation, config.components);
    if (config.rotation == Rotation::Varimax) solution = rotate_varimax(solution);
    report.pca = std::move(solution);
    report.weights = score_weights(*report.predictor_correlation, *report.pca, config.ridge);
    if (report.weights->ridge_applied)
        report.notes.push_back("score weights computed with a 1e-8 diagonal ridge");
}

Report run_matrix_only(const RunConfig& config) {
    Report report;
    report.mode = "matrix-only";
    report.source = "fixture:" + *config.fixture;
    report.response = config.response;
    report.diff = DiffMode::Off;

    if (!stage(report, Stage::Input, [&] {
            const CorrelationMatrix printed = fixtures::by_name(*config.fixture);
            if (std::find(printed.names().begin(), printed.names().end(), config.response) ==
                printed.names().end())
                throw ValidationError("response '" + config.response + "' not in fixture");
            report.correlation = printed;
        }))
        return report;

    if (!stage(report, Stage::Preprocess, [&] {
            CorrelationRepair repair = nearest_correlation(*report.correlation);
            if (repair.iterations > 0) {
                report.notes.push_back(
                    "printed matrix is not positive semi-definite; using the nearest "
                    "correlation matrix with eigenvalues >= 1e-6");
                report.correlation = repair.matrix;
                report.repair = std::move(repair);
            }
            for (const auto& n : report.correlation->names())
                if (n != config.response) report.predictors.push_back(n);
            report.predictor_correlation = report.correlation->select(report.predictors);
        }))
        return report;

    stage(report, Stage::Pca, [&] { run_pca(report, config); });
    return report;
}

Report run_table(const RunConfig& config) {
    Report report;
    report.mode = "table";
    report.response = config.response;
    report.diff = config.diff;

    std::optional<TimeSeriesTable> raw;
    if (config.input_path) {
        report.source = config.input_path->string();
    } else {
        report.source = "table";
    }
    if (!stage(report, Stage::Input, [&] {
            if (config.input_path) {
                LoadOptions opts;
                opts.required_columns = config.required_columns;
                opts.response = config.response;
                raw = load_table(*config.input_path, opts);
            } else {
                raw = config.table->with_response(config.response);
            }
        }))
        return report;
    report.predictors = raw->predictor_names();
    if (report.predictors.empty()) {
        report.failure = StageFailure{Stage::Input, "table has no predictor columns"};
        return report;
    }

    StandardizedMatrix z_pred;
    Vector response;
    if (!stage(report, Stage::Preprocess, [&] {
            report.analyzed = difference(*raw, config.diff);
            const TimeSeriesTable& t = *report.analyzed;
            report.correlation = correlation_matrix(standardize(t));
            report.predictor_correlation = report.correlation->select(report.predictors);
            const TimeSeriesTable preds = t.select(report.predictors);
            z_pred = standardize(preds);
            report.predictor_params = z_pred.params;
            response = t.column(config.response);
            report.vif = vif(z_pred);
        }))
        return report;

    // The baseline fit is diagnostic: its failure is reported, not fatal.
    try {
        const TimeSeriesTable& t = *report.analyzed;
        report.baseline_ols = fit_ols(report.predictors, t.select(report.predictors).values(),
                                      response);
    } catch (const Error& e) {
        report.baseline_ols_error = e.what();
    }

    if (!stage(report, Stage::Pca, [&] {
            run_pca(report, config);
            report.scores = component_scores(z_pred, *report.weights);
        }))
        return report;

    stage(report, Stage::Regression, [&] {
        report.pcr = fit_pcr(*report.scores, response);
        if (config.diff == DiffMode::Absolute) {
            const Vector levels = raw->column(config.response);
            report.price_path = reconstruct_prices(levels.front(), report.pcr->fitted);
            report.observed_levels.assign(levels.begin() + 1, levels.end());
            report.one_step_levels.resize(report.pcr->fitted.size());
            for (std::size_t t = 0; t < report.pcr->fitted.size(); ++t)
                report.one_step_levels[t] = levels[t] + report.pcr->fitted[t];
        } else {
            report.notes.push_back("price levels are reconstructed only for absolute differencing");
        }
    });
    return report;
}

} // namespace

Report run_pipeline(const RunConfig& config) {
    config.validate();
    return config.fixture ? run_matrix_only(config) : run_table(config);
}

} // namespace pcrkit

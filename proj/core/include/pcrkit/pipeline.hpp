#pragma once

#include "pcrkit/csv.hpp"
#include "pcrkit/pca.hpp"
#include "pcrkit/preprocess.hpp"
#include "pcrkit/regression.hpp"
#include "pcrkit/table.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace pcrkit {

enum class Rotation { Varimax, None };
enum class ReportFormat { Text, Delimited };

/// Pipeline stages; the numeric value is the process exit status on failure.
enum class Stage : int {
    Input = 2,
    Preprocess = 3,
    Pca = 4,
    Regression = 5,
    Io = 6,
};

const char* stage_name(Stage s) noexcept;

struct RunConfig {
    // Exactly one of these selects the input.
    std::optional<std::filesystem::path> input_path;
    std::optional<std::string> fixture;
    std::optional<TimeSeriesTable> table;

    std::string response = "IY";
    std::vector<std::string> required_columns = standard_columns();
    DiffMode diff = DiffMode::Absolute;
    std::optional<std::size_t> components; ///< empty: Kaiser criterion
    Rotation rotation = Rotation::Varimax;
    std::string score_method = "regression";
    bool ridge = false;
    std::filesystem::path out_dir = ".";
    ReportFormat format = ReportFormat::Text;

    /// Throws ConfigError when the source selection or options are invalid.
    void validate() const;
};

struct StageFailure {
    Stage stage;
    std::string message;
};

/// Everything a run produced. Optional members stay empty when their stage did
/// not run (matrix-only mode) or failed.
struct Report {
    std::string mode;   ///< "table" or "matrix-only"
    std::string source; ///< file path, "fixture:<name>" or "table"
    std::string response;
    DiffMode diff = DiffMode::Absolute;
    std::vector<std::string> predictors;

    std::optional<TimeSeriesTable> analyzed; ///< table after differencing
    std::optional<CorrelationMatrix> correlation;
    std::optional<CorrelationRepair> repair;
    std::optional<CorrelationMatrix> predictor_correlation;
    std::vector<VifEntry> vif;
    std::optional<OlsFit> baseline_ols;
    std::string baseline_ols_error;

    std::optional<PcaSolution> pca;
    std::optional<ScoreWeights> weights;
    std::optional<StandardizationParams> predictor_params;
    std::optional<ComponentScores> scores;
    std::optional<OlsFit> pcr;
    std::optional<PricePath> price_path;
    Vector observed_levels;  ///< response levels aligned with price_path
    Vector one_step_levels;  ///< previous observed level + fitted increment

    std::vector<std::string> notes;
    std::optional<StageFailure> failure;

    bool completed() const noexcept { return !failure; }
    int exit_code() const noexcept { return failure ? static_cast<int>(failure->stage) : 0; }
};

/// difference → standardize → correlation → (VIF, baseline OLS) → extract →
/// rotate → score weights → component scores → PCR → price reconstruction.
/// With a fixture source only the PCA stages run, on the repaired matrix.
/// Stage errors are recorded in `Report::failure`; earlier results are kept.
Report run_pipeline(const RunConfig& config);

std::string render_report(const Report& report, ReportFormat format);
std::string render_scatter(const std::vector<ScatterBlock>& blocks, ReportFormat format);

/// Writes report.{txt,csv} and, in table mode, scatter_pairs.{txt,csv} into
/// `config.out_dir`, creating it if needed. Returns the written paths.
std::vector<std::filesystem::path> emit_report(const Report& report, const RunConfig& config);

} // namespace pcrkit

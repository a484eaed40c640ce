// pcrkit: principal-components regression of house-price increments on
// yearly indicators.
//
//   pcrkit --input data.csv --out results/
//   pcrkit --fixture fig3 --format delim --out results/

#include "pcrkit/errors.hpp"
#include "pcrkit/pipeline.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <iostream>

namespace {

std::optional<std::size_t> parse_components(const std::string& s) {
    if (s == "auto") return std::nullopt;
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
    if (ec != std::errc() || ptr != s.data() + s.size() || k < 1)
        throw pcrkit::ConfigError("--components expects 'auto' or a positive integer, got '" + s +
                                  "'");
    return k;
}

void print_summary(const pcrkit::Report& r) {
    std::cout << "mode: " << r.mode << "\n";
    if (r.pca) {
        const auto& s = *r.pca;
        std::cout << "components: " << s.k << "\n";
        for (std::size_t j = 0; j < s.k; ++j)
            std::cout << "  " << s.component_names()[j] << " proportion_var "
                      << pcrkit::format_number(s.rotated_proportion_var[j]) << " (unrotated "
                      << pcrkit::format_number(s.proportion_var[j]) << ")\n";
    }
    if (r.mode == "table" && r.analyzed)
        std::cout << "baseline OLS: "
                  << (r.baseline_ols ? "ok" : "failed: " + r.baseline_ols_error) << "\n";
    if (r.pcr) std::cout << "PCR R^2: " << pcrkit::format_number(r.pcr->r_squared) << "\n";
    if (r.failure)
        std::cerr << "error [" << pcrkit::stage_name(r.failure->stage)
                  << "]: " << r.failure->message << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Principal-components regression pipeline for yearly house-price indicators"};

    std::string input, fixture, components = "auto", diff = "absolute", rotation = "varimax",
                                format = "text";
    pcrkit::RunConfig config;
    std::string scores = config.score_method;
    std::string out_dir = ".";
    bool any_columns = false;

    auto* in_opt = app.add_option("--input", input, "Indicator CSV (header: year,IY,REI,...)");
    auto* fx_opt = app.add_option("--fixture", fixture, "Embedded correlation fixture")
                       ->check(CLI::IsMember({"fig3"}));
    in_opt->excludes(fx_opt);
    app.add_option("--response", config.response, "Response column")->capture_default_str();
    app.add_option("--diff", diff, "Differencing mode")
        ->check(CLI::IsMember({"absolute", "percent", "off"}))
        ->capture_default_str();
    app.add_option("--components", components, "'auto' (eigenvalue > 1) or a count")
        ->capture_default_str();
    app.add_option("--rotation", rotation, "Rotation")
        ->check(CLI::IsMember({"varimax", "none"}))
        ->capture_default_str();
    app.add_option("--scores", scores, "Score method")
        ->check(CLI::IsMember({"regression"}))
        ->capture_default_str();
    app.add_flag("--ridge", config.ridge,
                 "Add a 1e-8 diagonal ridge when the correlation matrix is near-singular");
    app.add_flag("--any-columns", any_columns,
                 "Accept any predictor columns instead of the standard indicator set");
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"text", "delim"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(pcrkit::Stage::Input);
    }

    pcrkit::Report report;
    try {
        if (!input.empty()) config.input_path = input;
        if (!fixture.empty()) config.fixture = fixture;
        config.components = parse_components(components);
        config.diff = diff == "absolute"  ? pcrkit::DiffMode::Absolute
                      : diff == "percent" ? pcrkit::DiffMode::Percent
                                          : pcrkit::DiffMode::Off;
        config.rotation = rotation == "none" ? pcrkit::Rotation::None : pcrkit::Rotation::Varimax;
        config.score_method = scores;
        config.format = format == "delim" ? pcrkit::ReportFormat::Delimited
                                          : pcrkit::ReportFormat::Text;
        config.out_dir = out_dir;
        if (any_columns) config.required_columns.clear();
        report = pcrkit::run_pipeline(config);
    } catch (const pcrkit::Error& e) {
        std::cerr << "error [input]: " << e.what() << "\n";
        return static_cast<int>(pcrkit::Stage::Input);
    }

    try {
        for (const auto& path : pcrkit::emit_report(report, config))
            std::cout << "wrote " << path.string() << "\n";
    } catch (const pcrkit::Error& e) {
        std::cerr << "error [io]: " << e.what() << "\n";
        return static_cast<int>(pcrkit::Stage::Io);
    }
    print_summary(report);
    return report.exit_code();
}

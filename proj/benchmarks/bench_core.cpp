#include "pcrkit/fixtures.hpp"
#include "pcrkit/linalg.hpp"
#include "pcrkit/pca.hpp"
#include "pcrkit/pipeline.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace pcrkit;

namespace {

Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = g(rng);
    return a;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Matrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a(i, j) = g(rng);
    return a;
}

void BM_Jacobi(benchmark::State& state) {
    const Matrix a = random_symmetric(std::size_t(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(eigen_symmetric(a));
}
BENCHMARK(BM_Jacobi)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_LeastSquares(benchmark::State& state) {
    const std::size_t n = std::size_t(state.range(0));
    const Matrix x = random_matrix(n, 9, 2);
    const Matrix y = random_matrix(n, 1, 3);
    const Vector response = y.col(0);
    for (auto _ : state) benchmark::DoNotOptimize(least_squares(x, response));
}
BENCHMARK(BM_LeastSquares)->Arg(20)->Arg(200)->Arg(2000);

void BM_Varimax(benchmark::State& state) {
    const auto r = fixtures::fig3_repaired().matrix;
    const auto s = extract(r, std::size_t(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(rotate_varimax(s));
}
BENCHMARK(BM_Varimax)->Arg(2)->Arg(4);

void BM_PipelineFixture(benchmark::State& state) {
    RunConfig c;
    c.fixture = "fig3";
    for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(c));
}
BENCHMARK(BM_PipelineFixture);

void BM_PipelineSample(benchmark::State& state) {
    RunConfig c;
    c.input_path = PCRKIT_SOURCE_DIR "/data/sample_indicators.csv";
    for (auto _ : state) benchmark::DoNotOptimize(render_report(run_pipeline(c), ReportFormat::Text));
}
BENCHMARK(BM_PipelineSample);

} // namespace

BENCHMARK_MAIN();

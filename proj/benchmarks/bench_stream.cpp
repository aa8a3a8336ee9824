#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "icad/conformal.hpp"
#include "icad/embedding.hpp"
#include "icad/series.hpp"

namespace {

std::vector<icad::SeriesPoint> make_series(std::size_t n) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss;
    std::vector<icad::SeriesPoint> series;
    series.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        series.push_back({icad::Timestamp::from_index(static_cast<std::int64_t>(i)), gauss(rng)});
    }
    return series;
}

void bm_detect_stream(benchmark::State& state, icad::NcmFamily family) {
    icad::IcadConfig config;
    config.ncm = {family, 27, 3.0};
    const std::vector<icad::SeriesPoint> series = make_series(2000);
    for (auto _ : state) {
        benchmark::DoNotOptimize(icad::detect_stream(series, config));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(series.size()));
}

void bm_slide(benchmark::State& state) {
    const std::vector<icad::SeriesPoint> series = make_series(512);
    std::vector<double> values;
    values.reserve(series.size());
    for (const icad::SeriesPoint& p : series) {
        values.push_back(p.value);
    }
    icad::HankelMatrix matrix = icad::embed_values(values, 16, 0);
    std::int64_t next = static_cast<std::int64_t>(series.size());
    for (auto _ : state) {
        icad::slide(matrix, {icad::Timestamp::from_index(next), 0.25});
        ++next;
        benchmark::DoNotOptimize(matrix);
    }
    state.SetItemsProcessed(state.iterations());
}

} // namespace

BENCHMARK_CAPTURE(bm_detect_stream, knn, icad::NcmFamily::kKnn);
BENCHMARK_CAPTURE(bm_detect_stream, lof, icad::NcmFamily::kLof);
BENCHMARK(bm_slide);

BENCHMARK_MAIN();

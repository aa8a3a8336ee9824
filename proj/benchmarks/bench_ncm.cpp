#include <memory>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "icad/ncm.hpp"
#include "icad/reference_set.hpp"

namespace {

std::shared_ptr<const icad::ReferenceSet> make_reference(int dim, int count) {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> gauss;
    std::vector<icad::EmbeddedVector> vectors(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Eigen::VectorXd v(dim);
        for (int d = 0; d < dim; ++d) {
            v[d] = gauss(rng);
        }
        vectors[static_cast<std::size_t>(i)] = {std::move(v), i};
    }
    return std::make_shared<const icad::ReferenceSet>(icad::ReferenceSet::fit(vectors, 0.1));
}

Eigen::VectorXd make_query(int dim) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd q(dim);
    for (int d = 0; d < dim; ++d) {
        q[d] = gauss(rng);
    }
    return q;
}

void bm_score(benchmark::State& state, icad::NcmFamily family) {
    const int dim = 16;
    const auto count = static_cast<int>(state.range(0));
    const icad::NcmEvaluator evaluator(make_reference(dim, count), {family, 27, 3.0});
    const Eigen::VectorXd query = make_query(dim);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluator.score(query));
    }
    state.SetItemsProcessed(state.iterations());
}

void bm_fit(benchmark::State& state, icad::NcmFamily family) {
    const int dim = 16;
    const auto count = static_cast<int>(state.range(0));
    const auto reference = make_reference(dim, count);
    for (auto _ : state) {
        icad::NcmEvaluator evaluator(reference, {family, 27, 3.0});
        benchmark::DoNotOptimize(evaluator);
    }
}

} // namespace

BENCHMARK_CAPTURE(bm_score, knn, icad::NcmFamily::kKnn)->Arg(128)->Arg(512)->Arg(2048);
BENCHMARK_CAPTURE(bm_score, lof, icad::NcmFamily::kLof)->Arg(128)->Arg(512)->Arg(2048);
BENCHMARK_CAPTURE(bm_score, loop, icad::NcmFamily::kLoop)->Arg(128)->Arg(512)->Arg(2048);
BENCHMARK_CAPTURE(bm_fit, knn, icad::NcmFamily::kKnn)->Arg(512);
BENCHMARK_CAPTURE(bm_fit, lof, icad::NcmFamily::kLof)->Arg(512);
BENCHMARK_CAPTURE(bm_fit, loop, icad::NcmFamily::kLoop)->Arg(512);

#include <benchmark/benchmark.h>

#include <random>

#include "fknne/classifier.hpp"
#include "fknne/extract.hpp"
#include "fknne/kernels.hpp"
#include "fknne/synthetic.hpp"
#include "fknne/validation.hpp"

using namespace fknne;

namespace {

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

std::vector<double> random_matrix(std::size_t rows, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<double> m(rows * dim);
  for (auto& v : m) v = g(rng);
  return m;
}

Dataset noisy_clusters(int per_class) {
  SyntheticConfig cfg;
  cfg.per_class = per_class;
  cfg.separation = 0.5;
  cfg.spread = 1.0;
  return make_two_clusters(cfg);
}

void BM_DistanceMatrix(benchmark::State& state) {
  const std::size_t dim = 25;
  const auto q = random_matrix(512, dim, 1);
  const auto r = random_matrix(2048, dim, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::distance_matrix(q, r, dim, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * 512 * 2048);
}

void BM_PredictBatch(benchmark::State& state) {
  const auto data = noisy_clusters(500);
  ClassifierConfig cfg;
  cfg.k = 5;
  const auto model = fit(data, cfg);
  std::vector<std::vector<double>> queries;
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(5.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> x(data.dim());
    for (auto& v : x) v = g(rng);
    queries.push_back(std::move(x));
  }
  for (auto _ : state) benchmark::DoNotOptimize(predict_batch(model, queries, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * 1000);
}

void BM_Loocv(benchmark::State& state) {
  const auto data = noisy_clusters(100);
  ClassifierConfig cfg;
  cfg.k = 5;
  for (auto _ : state) benchmark::DoNotOptimize(loocv(data, cfg, kDefaultPositive, exec_of(state)));
}

void BM_ExtractBatch(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::vector<GrayImage> rois;
  for (int i = 0; i < 64; ++i) {
    std::vector<std::uint16_t> px(96 * 96);
    for (auto& v : px) v = static_cast<std::uint16_t>(rng() % 256);
    rois.push_back(make_image(96, 96, 255, std::move(px)));
  }
  const ExtractionConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(extract_batch(rois, cfg, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * 64);
}

}  // namespace

// Arg 0 runs the serial reference, arg 1 the OpenMP path.
BENCHMARK(BM_DistanceMatrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PredictBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Loocv)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

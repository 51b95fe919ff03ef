#include <gtest/gtest.h>

#include <random>

#include "fknne/error.hpp"
#include "fknne/extract.hpp"
#include "fknne/kernels.hpp"
#include "fknne/report.hpp"
#include "fknne/synthetic.hpp"
#include "fknne/validation.hpp"
#include "oracles.hpp"

using namespace fknne;

TEST(DistanceMatrix, SerialAndParallelAreBitwiseEqual) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 3.0);
  const std::size_t dim = 7, nq = 211, nr = 173;
  std::vector<double> q(nq * dim), r(nr * dim);
  for (auto& v : q) v = g(rng);
  for (auto& v : r) v = g(rng);
  const auto a = kernels::distance_matrix(q, r, dim, Execution::serial);
  const auto b = kernels::distance_matrix(q, r, dim, Execution::parallel);
  ASSERT_EQ(a.size(), nq * nr);
  EXPECT_EQ(a, b);
  for (std::size_t i = 0; i < nq; i += 37) {
    for (std::size_t j = 0; j < nr; j += 29) {
      double acc = 0.0;
      for (std::size_t f = 0; f < dim; ++f) acc += (q[i * dim + f] - r[j * dim + f]) * (q[i * dim + f] - r[j * dim + f]);
      EXPECT_NEAR(a[i * nr + j], std::sqrt(acc), 1e-12);
    }
  }
}

TEST(DistanceMatrix, ShapeErrors) {
  const std::vector<double> q(5), r(6);
  EXPECT_THROW(kernels::distance_matrix(q, r, 3, Execution::serial), Error);
  EXPECT_THROW(kernels::distance_matrix(r, r, 0, Execution::serial), Error);
}

TEST(Evaluate, LoocvSerialAndParallelAgree) {
  SyntheticConfig cfg;
  cfg.per_class = 25;
  cfg.separation = 1.0;
  cfg.spread = 1.0;
  cfg.feature_names = {"a", "b", "c", "d"};
  const auto data = make_two_clusters(cfg);
  ClassifierConfig model;
  model.k = 5;
  const auto a = loocv(data, model, kDefaultPositive, Execution::serial);
  const auto b = loocv(data, model, kDefaultPositive, Execution::parallel);
  EXPECT_EQ(report_to_json(a).dump(), report_to_json(b).dump());
}

TEST(ExtractBatch, SerialAndParallelAgree) {
  std::mt19937_64 rng(3);
  std::vector<GrayImage> rois;
  for (int i = 0; i < 24; ++i) {
    const int w = 8 + static_cast<int>(rng() % 24);
    const int h = 8 + static_cast<int>(rng() % 24);
    std::vector<std::uint16_t> px(static_cast<std::size_t>(w * h));
    for (auto& v : px) v = static_cast<std::uint16_t>(rng() % 4096);
    rois.push_back(make_image(w, h, 4095, px));
  }
  ExtractionConfig cfg;
  const auto a = extract_batch(rois, cfg, Execution::serial);
  const auto b = extract_batch(rois, cfg, Execution::parallel);
  ASSERT_EQ(a.size(), rois.size());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a[5], extract_all(rois[5], cfg));
}

TEST(Threads, ReportsAtLeastOne) { EXPECT_GE(kernels::max_threads(), 1); }

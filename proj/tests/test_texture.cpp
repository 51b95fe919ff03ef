#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fknne/error.hpp"
#include "fknne/texture.hpp"
#include "oracles.hpp"

using namespace fknne;

namespace {

const std::vector<std::vector<int>> kExample = {{0, 0, 1}, {0, 0, 1}, {0, 2, 2}};

GrayImage checkerboard(int w, int h) {
  std::vector<std::vector<int>> rows(h, std::vector<int>(w));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) rows[y][x] = (x + y) % 2;
  }
  return image_from_rows(rows, 1);
}

GrayImage constant(int w, int h, int level, int max_val) {
  return image_from_rows(std::vector<std::vector<int>>(h, std::vector<int>(w, level)), max_val);
}

}  // namespace

TEST(Glcm, HandEnumeratedExample) {
  const auto glcm = compute_glcm(image_from_rows(kExample, 2), {1, 0});
  ASSERT_EQ(glcm.levels, 3);
  const auto counts = oracle::pair_counts(kExample, 1, 0, false);
  EXPECT_EQ(counts, (std::map<std::pair<int, int>, int>{{{0, 0}, 2}, {{0, 1}, 2}, {{0, 2}, 1}, {{2, 2}, 1}}));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto it = counts.find({i, j});
      EXPECT_DOUBLE_EQ(glcm.at(i, j), it == counts.end() ? 0.0 : it->second / 6.0);
    }
  }
}

TEST(Glcm, SymmetricMirrorsCounts) {
  const auto glcm = compute_glcm(image_from_rows(kExample, 2), {1, 0}, true);
  const auto counts = oracle::pair_counts(kExample, 1, 0, true);
  int total = 0;
  for (const auto& [_, c] : counts) total += c;
  EXPECT_EQ(total, 12);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto it = counts.find({i, j});
      EXPECT_DOUBLE_EQ(glcm.at(i, j), it == counts.end() ? 0.0 : it->second / 12.0);
      EXPECT_EQ(glcm.at(i, j), glcm.at(j, i));
    }
  }
}

TEST(Glcm, ConstantImageSingleCell) {
  const auto glcm = compute_glcm(constant(5, 4, 2, 3), {1, 1});
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_EQ(glcm.at(i, j), i == 2 && j == 2 ? 1.0 : 0.0);
  }
}

TEST(Glcm, Errors) {
  EXPECT_THROW(compute_glcm(image_from_rows(kExample, 2), {0, 0}), Error);
  EXPECT_THROW(compute_glcm(image_from_rows({{1}}, 2), {1, 0}), Error);
  EXPECT_THROW(compute_glcm(image_from_rows(kExample, 2), {5, 0}), Error);
  EXPECT_THROW(compute_glcm(image_from_rows(kExample, 255), {1, 0}), Error);  // not quantized
}

TEST(Haralick, ExampleContrastAndEntropy) {
  const auto f = haralick_features(compute_glcm(image_from_rows(kExample, 2), {1, 0}));
  EXPECT_NEAR(f.get("contrast"), 1.0, 1e-12);
  EXPECT_NEAR(f.get("entropy"), (2.0 / 3.0) * std::log(3.0) + (1.0 / 3.0) * std::log(6.0), 1e-12);
  EXPECT_NEAR(f.get("asm"), 2 * (1.0 / 9) + 2 * (1.0 / 36), 1e-12);
  EXPECT_EQ(f.names, haralick_feature_names());
  EXPECT_EQ(f.size(), 13u);
}

TEST(Haralick, ConstantImage) {
  const auto f = haralick_features(compute_glcm(constant(4, 4, 1, 3), {1, 0}));
  EXPECT_EQ(f.get("asm"), 1.0);
  EXPECT_EQ(f.get("contrast"), 0.0);
  EXPECT_EQ(f.get("entropy"), 0.0);
  EXPECT_EQ(f.get("idm"), 1.0);
  EXPECT_EQ(f.get("correlation"), 0.0);
  EXPECT_EQ(f.get("imc1"), 0.0);
  EXPECT_EQ(f.get("imc2"), 0.0);
}

TEST(Haralick, PropertiesOverRandomImages) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int levels = 2 + static_cast<int>(rng() % 15);
    const auto rows = oracle::random_image(rng, 8, 8, levels);
    const auto img = image_from_rows(rows, levels - 1);
    for (const Offset dir : kDirections) {
      for (bool symmetric : {false, true}) {
        const auto glcm = compute_glcm(img, dir, symmetric);
        const auto f = haralick_features(glcm);
        EXPECT_GT(f.get("asm"), 0.0);
        EXPECT_LE(f.get("asm"), 1.0);
        EXPECT_GE(f.get("contrast"), 0.0);
        EXPECT_GE(f.get("entropy"), 0.0);
        EXPECT_GE(f.get("correlation"), -1.0);
        EXPECT_LE(f.get("correlation"), 1.0);
        EXPECT_GT(f.get("idm"), 0.0);
        EXPECT_LE(f.get("idm"), 1.0);

        // ASM re-derived from the raw pair list.
        const auto counts = oracle::pair_counts(rows, dir.dx, dir.dy, symmetric);
        double total = 0.0, asm_ = 0.0;
        for (const auto& [_, c] : counts) total += c;
        for (const auto& [_, c] : counts) asm_ += (c / total) * (c / total);
        EXPECT_NEAR(f.get("asm"), asm_, 1e-12);

        if (symmetric) {
          double mean = 0.0;
          for (int i = 0; i < glcm.levels; ++i) {
            for (int j = 0; j < glcm.levels; ++j) mean += i * glcm.at(i, j);
          }
          EXPECT_NEAR(f.get("sum_average"), 2.0 * mean, 1e-12);
        }
      }
    }
  }
}

TEST(Glrlm, SingleRowExample) {
  const auto m = compute_glrlm(image_from_rows({{0, 0, 1, 1, 1}}, 1), {1, 0});
  EXPECT_EQ(m.count(0, 2), 1);
  EXPECT_EQ(m.count(1, 3), 1);
  std::int64_t runs = 0;
  for (auto c : m.r) runs += c;
  EXPECT_EQ(runs, 2);
  EXPECT_DOUBLE_EQ(runlength_features(m).get("rp"), 0.4);
}

TEST(Glrlm, ConstantImageOneRunPerRow) {
  const auto m = compute_glrlm(constant(6, 3, 2, 3), {1, 0});
  EXPECT_EQ(m.count(2, 6), 3);
  EXPECT_EQ(runlength_features(compute_glrlm(constant(4, 4, 0, 1), {1, 0})).get("rp"), 0.25);
}

TEST(Glrlm, CheckerboardUnitRuns) {
  const auto board = checkerboard(6, 5);
  const auto m = compute_glrlm(board, {1, 0});
  EXPECT_EQ(m.count(0, 1) + m.count(1, 1), m.n_pixels);
  const auto f = runlength_features(m);
  EXPECT_EQ(f.get("sre"), 1.0);
  EXPECT_EQ(f.get("lre"), 1.0);
  EXPECT_EQ(f.get("rp"), 1.0);
}

TEST(Glrlm, MatchesNaiveRunsAndCoversEveryPixel) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const int levels = 2 + static_cast<int>(rng() % 4);
    const auto rows = oracle::random_image(rng, 8, 8, levels);
    const auto img = image_from_rows(rows, levels - 1);
    for (const Offset dir : kDirections) {
      const auto m = compute_glrlm(img, dir);
      const auto expected = oracle::naive_runs(rows, dir.dx, dir.dy);
      std::int64_t covered = 0;
      for (int g = 0; g < m.levels; ++g) {
        for (int l = 1; l <= m.max_run; ++l) {
          const auto it = expected.find({g, l});
          EXPECT_EQ(m.count(g, l), it == expected.end() ? 0 : it->second);
          covered += m.count(g, l) * l;
        }
      }
      EXPECT_EQ(covered, m.n_pixels);
    }
  }
}

TEST(Glrlm, UnsupportedDirection) {
  EXPECT_THROW(compute_glrlm(checkerboard(4, 4), {2, 0}), Error);
  EXPECT_THROW(compute_glrlm(checkerboard(4, 4), {-1, 0}), Error);
}

TEST(Glrlm, EmptyMatrixRejected) {
  Glrlm empty{2, 3, std::vector<std::int64_t>(6, 0), {1, 0}, 9};
  EXPECT_THROW(runlength_features(empty), Error);
}

TEST(Gldm, Examples) {
  EXPECT_EQ(compute_gldm(constant(4, 4, 3, 3), {1, 0}).d[0], 1.0);
  const auto row = compute_gldm(image_from_rows({{0, 2, 0}}, 2), {1, 0});
  EXPECT_EQ(row.d, (std::vector<double>{0.0, 0.0, 1.0}));
  EXPECT_EQ(compute_gldm(checkerboard(5, 5), {1, 0}).d, (std::vector<double>{0.0, 1.0}));
  EXPECT_THROW(compute_gldm(checkerboard(5, 5), {0, 0}), Error);
  EXPECT_THROW(compute_gldm(image_from_rows({{1}}, 1), {0, 1}), Error);
}

TEST(Gldm, Features) {
  const auto flat = gldm_features(compute_gldm(constant(4, 4, 3, 3), {0, 1}));
  EXPECT_EQ(flat.values, (std::vector<double>{0.0, 0.0, 1.0, 0.0, 1.0}));
  const auto board = gldm_features(compute_gldm(checkerboard(4, 4), {1, 0}));
  EXPECT_EQ(board.get("mean"), 1.0);
  EXPECT_EQ(board.get("contrast"), 1.0);
  EXPECT_EQ(board.get("idm"), 0.5);
  const auto half = gldm_features(Gldm{2, {0.5, 0.5}, {1, 0}});
  EXPECT_NEAR(half.get("entropy"), std::log(2.0), 1e-15);
}

TEST(Probabilities, SumToOneOverRandomImages) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int levels = 2 + static_cast<int>(rng() % 15);
    const auto img = image_from_rows(oracle::random_image(rng, 8, 8, levels), levels - 1);
    for (const Offset dir : kDirections) {
      double s = 0.0;
      for (double p : compute_glcm(img, dir).p) {
        EXPECT_GE(p, 0.0);
        s += p;
      }
      EXPECT_NEAR(s, 1.0, 1e-9);
      s = 0.0;
      for (double p : compute_gldm(img, dir).d) {
        EXPECT_GE(p, 0.0);
        s += p;
      }
      EXPECT_NEAR(s, 1.0, 1e-9);
    }
  }
}

TEST(ExtractAll, ConstantRoi) {
  const auto f = extract_all(constant(4, 4, 200, 255));
  EXPECT_EQ(f.get("glcm.contrast"), 0.0);
  EXPECT_EQ(f.get("glcm.asm"), 1.0);
  // Horizontal and vertical: 4 runs each; both diagonals: 7 runs. Over 16 pixels.
  EXPECT_EQ(f.get("rl.rp"), (4.0 + 4.0 + 7.0 + 7.0) / (4 * 16.0));
  EXPECT_EQ(f.get("gldm.asm"), 1.0);
}

TEST(ExtractAll, SchemaIsStable) {
  std::mt19937_64 rng(8);
  const auto& schema = feature_schema();
  ASSERT_EQ(schema.size(), 25u);
  EXPECT_EQ(schema.front(), "glcm.asm");
  EXPECT_EQ(schema[13], "rl.sre");
  EXPECT_EQ(schema.back(), "gldm.idm");
  for (int trial = 0; trial < 5; ++trial) {
    const auto img = image_from_rows(oracle::random_image(rng, 6 + trial, 9, 256), 255);
    EXPECT_EQ(extract_all(img).names, schema);
  }
}

TEST(ExtractAll, RotationInvariantOnSquareRoi) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rows = oracle::random_image(rng, 8, 8, 256);
    std::vector<std::vector<int>> rotated(8, std::vector<int>(8));
    for (int y = 0; y < 8; ++y) {
      for (int x = 0; x < 8; ++x) rotated[x][7 - y] = rows[y][x];
    }
    for (bool symmetric : {false, true}) {
      ExtractionConfig cfg;
      cfg.levels = 8;
      cfg.symmetric = symmetric;
      const auto a = extract_all(image_from_rows(rows, 255), cfg);
      const auto b = extract_all(image_from_rows(rotated, 255), cfg);
      for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-9) << a.names[i];
    }
  }
}

TEST(ExtractAll, DeterministicAndConfigChecked) {
  std::mt19937_64 rng(12);
  const auto img = image_from_rows(oracle::random_image(rng, 12, 10, 256), 255);
  ExtractionConfig cfg;
  cfg.distance = 2;
  EXPECT_EQ(extract_all(img, cfg), extract_all(img, cfg));
  cfg.levels = 65;
  EXPECT_THROW(extract_all(img, cfg), Error);
  cfg.levels = 16;
  cfg.distance = 0;
  EXPECT_THROW(extract_all(img, cfg), Error);
  cfg.distance = 1;
  cfg.stretch = false;
  EXPECT_NO_THROW(extract_all(img, cfg));
}

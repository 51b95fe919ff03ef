#include <gtest/gtest.h>

#include <random>

#include "fknne/error.hpp"
#include "fknne/image.hpp"
#include "fknne/mias.hpp"
#include "fknne/normalize.hpp"
#include "fknne/pgm.hpp"

using namespace fknne;

namespace {

GrayImage random_gray(std::mt19937_64& rng, int w, int h, int max_val) {
  std::vector<std::uint16_t> px(static_cast<std::size_t>(w) * h);
  for (auto& v : px) v = static_cast<std::uint16_t>(rng() % (static_cast<std::uint64_t>(max_val) + 1));
  return make_image(w, h, max_val, std::move(px));
}

}  // namespace

TEST(ReadPgm, MinimalAsciiFile) {
  const auto img = read_pgm("P2\n1 1\n255\n7");
  EXPECT_EQ(img, (GrayImage{1, 1, 255, {7}}));
}

TEST(ReadPgm, AsciiAndBinaryEncodingsAgree) {
  const std::string p2 = "P2\n# fixture\n2 2\n255\n0 17\n200 255\n";
  std::string p5 = "P5\n2 2\n255\n";
  for (int v : {0, 17, 200, 255}) p5.push_back(static_cast<char>(v));
  const auto a = read_pgm(p2);
  const auto b = read_pgm(p5);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.at(1, 0), 17);
  EXPECT_EQ(a.at(0, 1), 200);
}

TEST(ReadPgm, SixteenBitBinaryIsBigEndian) {
  std::string p5 = "P5 2 1 1000\n";
  for (int b : {0x03, 0xE8, 0x00, 0x01}) p5.push_back(static_cast<char>(b));
  const auto img = read_pgm(p5);
  EXPECT_EQ(img.pixels, (std::vector<std::uint16_t>{1000, 1}));
}

TEST(ReadPgm, CommentsBetweenHeaderTokens) {
  const auto img = read_pgm("P2 # magic\n# size next\n3 # w\n1\n# max\n9\n1 2 3\n");
  EXPECT_EQ(img, (GrayImage{3, 1, 9, {1, 2, 3}}));
}

TEST(ReadPgm, Errors) {
  EXPECT_THROW(read_pgm("P3\n1 1\n255\n0 0 0"), Error);
  EXPECT_THROW(read_pgm(""), Error);
  EXPECT_THROW(read_pgm("P2\n2 2\n255\n1 2 3"), Error);          // truncated ascii
  EXPECT_THROW(read_pgm(std::string("P5\n2 2\n255\n\x01\x02", 14)), Error);  // truncated binary
  EXPECT_THROW(read_pgm("P2\n1 1\n0\n0"), Error);                // max_val 0
  EXPECT_THROW(read_pgm("P2\n1 1\n70000\n0"), Error);            // max_val too large
  EXPECT_THROW(read_pgm("P2\n0 1\n255\n"), Error);                // zero width
  EXPECT_THROW(read_pgm("P2\n-1 1\n255\n0"), Error);              // negative width
  EXPECT_THROW(read_pgm("P2\n1 1\n9\n10"), Error);                // pixel above max_val
}

TEST(ReadPgm, RoundTripBothEncodings) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int max_val = trial % 2 ? 255 : 4095;
    const auto img = random_gray(rng, 1 + static_cast<int>(rng() % 9), 1 + static_cast<int>(rng() % 9), max_val);
    EXPECT_EQ(read_pgm(write_pgm(img, PgmEncoding::ascii)), img);
    EXPECT_EQ(read_pgm(write_pgm(img, PgmEncoding::binary)), img);
  }
}

TEST(MiasIndex, ParsesRecordAndFlipsOrigin) {
  const auto rois = parse_mias_index("mdb001 G CIRC B 535 425 197\n");
  ASSERT_EQ(rois.size(), 1u);
  EXPECT_EQ(rois[0].id, "mdb001");
  EXPECT_EQ(rois[0].image, "mdb001");
  EXPECT_EQ(rois[0].center_x, 535);
  EXPECT_EQ(rois[0].center_y, 598);
  EXPECT_EQ(rois[0].radius, 197);
  EXPECT_EQ(rois[0].label, Severity::benign);
}

TEST(MiasIndex, SkipsRecordsWithoutCoordinates) {
  const auto rois = parse_mias_index(
      "mdb003 D NORM\n"
      "\n"
      "# comment\n"
      "mdb059 F CIRC B\n"
      "mdb023 G CIRC M 538 681 29\n");
  ASSERT_EQ(rois.size(), 1u);
  EXPECT_EQ(rois[0].id, "mdb023");
  EXPECT_EQ(rois[0].label, Severity::malignant);
}

TEST(MiasIndex, RepeatedReferenceGetsSuffixedIds) {
  const auto rois = parse_mias_index("mdb005 F CIRC B 477 133 30\nmdb005 F CIRC B 500 168 26\n", 100);
  ASSERT_EQ(rois.size(), 2u);
  EXPECT_EQ(rois[0].id, "mdb005");
  EXPECT_EQ(rois[1].id, "mdb005_2");
  EXPECT_EQ(rois[1].image, "mdb005");
  EXPECT_EQ(rois[0].center_y, 100 - 1 - 133);
}

TEST(MiasIndex, Errors) {
  EXPECT_THROW(parse_mias_index("mdb000 G CIRC X 1 2 3"), Error);
  EXPECT_THROW(parse_mias_index("mdb000 G CIRC B 1 two 3"), Error);
  EXPECT_THROW(parse_mias_index("mdb000 G CIRC B 1 2"), Error);
  EXPECT_THROW(parse_mias_index("mdb000 G CIRC B 1 2 0"), Error);
}

TEST(CropRoi, SquareWindowFromRadius) {
  std::mt19937_64 rng(3);
  const auto img = random_gray(rng, 10, 10, 255);
  const auto crop = crop_roi(img, RoiSpec{"r", "i", 5, 5, 2, Severity::benign});
  EXPECT_EQ(crop.width, 5);
  EXPECT_EQ(crop.height, 5);
  EXPECT_EQ(crop.max_val, 255);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 5; ++x) EXPECT_EQ(crop.at(x, y), img.at(3 + x, 3 + y));
  }
}

TEST(CropRoi, ClampsAtBorder) {
  std::mt19937_64 rng(4);
  const auto img = random_gray(rng, 10, 10, 255);
  const auto crop = crop_roi(img, RoiSpec{"r", "i", 0, 0, 2, Severity::benign});
  EXPECT_EQ(crop.width, 3);
  EXPECT_EQ(crop.height, 3);
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 3; ++x) EXPECT_EQ(crop.at(x, y), img.at(x, y));
  }
  const auto far = crop_roi(img, RoiSpec{"r", "i", 9, 8, 3, Severity::benign});
  EXPECT_EQ(far.width, 4);
  EXPECT_EQ(far.height, 5);
  EXPECT_EQ(far.at(0, 0), img.at(6, 5));
}

TEST(CropRoi, ExplicitSide) {
  std::mt19937_64 rng(5);
  const auto img = random_gray(rng, 20, 20, 255);
  const auto crop = crop_roi(img, RoiSpec{"r", "i", 10, 10, 2, Severity::benign}, 8);
  EXPECT_EQ(crop.width, 8);
  EXPECT_EQ(crop.at(0, 0), img.at(6, 6));
  EXPECT_EQ(crop.at(7, 7), img.at(13, 13));
}

TEST(CropRoi, CentreOutsideImage) {
  std::mt19937_64 rng(6);
  const auto img = random_gray(rng, 10, 10, 255);
  EXPECT_THROW(crop_roi(img, RoiSpec{"r", "i", 20, 20, 2, Severity::benign}), Error);
}

TEST(MinMaxNormalize, Examples) {
  EXPECT_EQ(minmax_normalize(std::vector<double>{2, 4, 6}), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(minmax_normalize(std::vector<double>{5, 5, 5}), (std::vector<double>{0.0, 0.0, 0.0}));
  EXPECT_THROW(minmax_normalize(std::vector<double>{}), Error);
}

TEST(MinMaxNormalize, RangeAndAffineInvariance) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(100);
    for (auto& x : v) x = u(rng);
    const auto out = minmax_normalize(v);
    EXPECT_EQ(*std::min_element(out.begin(), out.end()), 0.0);
    EXPECT_EQ(*std::max_element(out.begin(), out.end()), 1.0);

    const double a = 0.1 + std::abs(u(rng)), b = u(rng);
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = a * v[i] + b;
    const auto out2 = minmax_normalize(w);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(out[i], out2[i], 1e-9);
  }
}

TEST(Quantize, Examples) {
  const auto img = make_image(3, 1, 255, {0, 255, 128});
  const auto q = quantize(img, 4);
  EXPECT_EQ(q.max_val, 3);
  EXPECT_EQ(q.pixels, (std::vector<std::uint16_t>{0, 3, 2}));

  const auto flat = quantize(make_image(2, 2, 255, {90, 90, 90, 90}), 4);
  EXPECT_EQ(flat.pixels, (std::vector<std::uint16_t>{1, 1, 1, 1}));

  EXPECT_THROW(quantize(img, 1), Error);
  EXPECT_THROW(quantize(make_image(1, 1, 3, {0}), 5), Error);
}

TEST(Quantize, MonotoneAndSurjective) {
  for (int levels : {2, 3, 7, 16, 64}) {
    std::vector<std::uint16_t> ramp(256);
    for (int g = 0; g < 256; ++g) ramp[g] = static_cast<std::uint16_t>(g);
    const auto q = quantize(make_image(256, 1, 255, ramp), levels);
    for (int g = 1; g < 256; ++g) EXPECT_LE(q.pixels[g - 1], q.pixels[g]);
    std::vector<bool> hit(levels, false);
    for (auto v : q.pixels) hit[v] = true;
    EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) << levels;
  }
}

TEST(StretchQuantize, UsesObservedRange) {
  const auto q = stretch_quantize(make_image(4, 1, 255, {100, 101, 102, 103}), 4);
  EXPECT_EQ(q.pixels, (std::vector<std::uint16_t>{0, 1, 2, 3}));
  const auto flat = stretch_quantize(make_image(2, 1, 255, {77, 77}), 16);
  EXPECT_EQ(flat.pixels, (std::vector<std::uint16_t>{0, 0}));
  EXPECT_EQ(flat.max_val, 15);
}

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fknne/feature_vector.hpp"
#include "fknne/image.hpp"

namespace fknne {

struct Offset {
  int dx = 1;
  int dy = 0;

  bool operator==(const Offset&) const = default;
};

/// Largest number of gray levels accepted by the texture matrices.
inline constexpr int kMaxTextureLevels = 64;

/// The four directions {0, 45, 90, 135 degrees} at unit distance, y pointing down.
inline constexpr std::array<Offset, 4> kDirections = {Offset{1, 0}, Offset{1, 1}, Offset{0, 1}, Offset{1, -1}};

/// Gray-level co-occurrence matrix, normalized to a joint probability.
struct Glcm {
  int levels = 0;
  std::vector<double> p;  // levels x levels, row = reference pixel level
  Offset offset;
  bool symmetric = false;

  double at(int i, int j) const { return p[static_cast<std::size_t>(i) * levels + j]; }
};

/// Gray-level run-length matrix. count(g, l) is the number of maximal runs of
/// level g with length exactly l (1-based).
struct Glrlm {
  int levels = 0;
  int max_run = 0;
  std::vector<std::int64_t> r;  // levels x max_run, column l-1 holds length l
  Offset direction;
  std::int64_t n_pixels = 0;

  std::int64_t count(int g, int l) const { return r[static_cast<std::size_t>(g) * max_run + (l - 1)]; }
};

/// Gray-level difference distribution: d[k] = P(|g(p) - g(p + offset)| = k).
struct Gldm {
  int levels = 0;
  std::vector<double> d;
  Offset offset;
};

Glcm compute_glcm(const GrayImage& img, Offset offset, bool symmetric = false);
Glrlm compute_glrlm(const GrayImage& img, Offset direction);
Gldm compute_gldm(const GrayImage& img, Offset offset);

/// The 13 Haralick statistics (maximal correlation coefficient omitted).
/// Natural logarithms throughout, 0 log 0 = 0.
FeatureVector haralick_features(const Glcm& glcm);

/// SRE, LRE, GLN, RLN, RP, LGRE, HGRE. Gray levels enter LGRE/HGRE as g+1.
FeatureVector runlength_features(const Glrlm& glrlm);

/// Mean, contrast, ASM, entropy and IDM of the difference distribution.
FeatureVector gldm_features(const Gldm& gldm);

const std::vector<std::string>& haralick_feature_names();
const std::vector<std::string>& runlength_feature_names();
const std::vector<std::string>& gldm_feature_names();

struct ExtractionConfig {
  int levels = 16;
  int distance = 1;
  bool symmetric = false;
  /// Min-max stretch ROI intensities before quantizing. When false the
  /// image's declared max_val is used as the quantization range.
  bool stretch = true;

  void validate() const;
};

/// Full feature schema in output order: 13 "glcm.*", 7 "rl.*", 5 "gldm.*".
const std::vector<std::string>& feature_schema();

/// Quantizes the ROI, computes GLCM/GLRLM/GLDM in each of the four
/// directions (scaled by cfg.distance for GLCM and GLDM), averages every
/// feature across directions, and concatenates in feature_schema() order.
FeatureVector extract_all(const GrayImage& roi, const ExtractionConfig& cfg = {});

}  // namespace fknne

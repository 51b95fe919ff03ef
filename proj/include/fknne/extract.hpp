#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fknne/csv.hpp"
#include "fknne/image.hpp"
#include "fknne/kernels.hpp"
#include "fknne/texture.hpp"

namespace fknne {

struct RoiExtractionOptions {
  ExtractionConfig texture;
  /// Crop side; defaults to 2 * radius + 1 per ROI.
  std::optional<int> side;
  std::string extension = ".pgm";
};

struct ExtractionFailure {
  std::string id;
  std::string message;
};

struct ExtractionResult {
  std::vector<FeatureRow> rows;              // sorted by id
  std::vector<ExtractionFailure> failures;   // sorted by id
};

/// Loads `<images_dir>/<roi.image><extension>` for each ROI, crops it and
/// extracts the texture features. Failures are collected, not thrown.
ExtractionResult extract_rois(const std::filesystem::path& images_dir, const std::vector<RoiSpec>& rois,
                              const RoiExtractionOptions& options, Execution exec = Execution::parallel);

/// extract_all() over in-memory ROIs, output in input order.
std::vector<FeatureVector> extract_batch(const std::vector<GrayImage>& rois, const ExtractionConfig& cfg,
                                         Execution exec = Execution::parallel);

}  // namespace fknne

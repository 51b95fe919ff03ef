#include "fknne/extract.hpp"

#include <algorithm>
#include <exception>

#include "fknne/error.hpp"
#include "fknne/pgm.hpp"

namespace fknne {

ExtractionResult extract_rois(const std::filesystem::path& images_dir, const std::vector<RoiSpec>& rois,
                              const RoiExtractionOptions& options, Execution exec) {
  options.texture.validate();
  if (options.side && *options.side < 1) throw Error("crop side must be positive");

  struct Slot {
    std::optional<FeatureRow> row;
    std::optional<ExtractionFailure> failure;
  };
  std::vector<Slot> slots(rois.size());
  const auto one = [&](std::ptrdiff_t i) {
    const auto& roi = rois[static_cast<std::size_t>(i)];
    auto& slot = slots[static_cast<std::size_t>(i)];
    try {
      const auto path = images_dir / (roi.image + options.extension);
      if (!std::filesystem::exists(path)) throw Error("image not found: " + path.string());
      const auto image = read_pgm_file(path);
      const auto crop = crop_roi(image, roi, options.side);
      slot.row = FeatureRow{roi.id, to_string(roi.label), extract_all(crop, options.texture)};
    } catch (const std::exception& e) {
      slot.failure = ExtractionFailure{roi.id, e.what()};
    }
  };
  const auto n = static_cast<std::ptrdiff_t>(rois.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) one(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) one(i);
  }

  ExtractionResult result;
  for (auto& slot : slots) {
    if (slot.row) result.rows.push_back(std::move(*slot.row));
    if (slot.failure) result.failures.push_back(std::move(*slot.failure));
  }
  std::sort(result.rows.begin(), result.rows.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(result.failures.begin(), result.failures.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return result;
}

std::vector<FeatureVector> extract_batch(const std::vector<GrayImage>& rois, const ExtractionConfig& cfg,
                                         Execution exec) {
  cfg.validate();
  std::vector<FeatureVector> out(rois.size());
  std::vector<std::exception_ptr> errors(rois.size());
  const auto one = [&](std::ptrdiff_t i) {
    try {
      out[static_cast<std::size_t>(i)] = extract_all(rois[static_cast<std::size_t>(i)], cfg);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  };
  const auto n = static_cast<std::ptrdiff_t>(rois.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) one(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) one(i);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace fknne

#include "fknne/image.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "fknne/error.hpp"

namespace fknne {

GrayImage make_image(int width, int height, int max_val, std::vector<std::uint16_t> pixels) {
  if (width <= 0 || height <= 0) {
    throw Error("image dimensions must be positive, got " + std::to_string(width) + "x" + std::to_string(height));
  }
  if (max_val <= 0 || max_val > 65535) {
    throw Error("max_val must be in [1, 65535], got " + std::to_string(max_val));
  }
  if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error("pixel count " + std::to_string(pixels.size()) + " does not match " + std::to_string(width) + "x" +
                std::to_string(height));
  }
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    if (pixels[i] > max_val) {
      throw Error("pixel " + std::to_string(i) + " value " + std::to_string(pixels[i]) + " exceeds max_val " +
                  std::to_string(max_val));
    }
  }
  return GrayImage{width, height, max_val, std::move(pixels)};
}

GrayImage image_from_rows(const std::vector<std::vector<int>>& rows, int max_val) {
  if (rows.empty() || rows.front().empty()) throw Error("image rows must be non-empty");
  const auto width = rows.front().size();
  std::vector<std::uint16_t> pixels;
  pixels.reserve(width * rows.size());
  for (const auto& row : rows) {
    if (row.size() != width) throw Error("ragged image rows");
    for (int v : row) {
      if (v < 0 || v > 65535) throw Error("pixel value out of range: " + std::to_string(v));
      pixels.push_back(static_cast<std::uint16_t>(v));
    }
  }
  return make_image(static_cast<int>(width), static_cast<int>(rows.size()), max_val, std::move(pixels));
}

std::string to_string(Severity s) { return s == Severity::benign ? "benign" : "malignant"; }

GrayImage crop_roi(const GrayImage& img, const RoiSpec& roi, std::optional<int> side) {
  if (roi.center_x < 0 || roi.center_x >= img.width || roi.center_y < 0 || roi.center_y >= img.height) {
    throw Error("ROI " + roi.id + " centre (" + std::to_string(roi.center_x) + "," + std::to_string(roi.center_y) +
                ") lies outside the " + std::to_string(img.width) + "x" + std::to_string(img.height) + " image");
  }
  if (roi.radius < 1) throw Error("ROI " + roi.id + " radius must be >= 1");
  const int s = side.value_or(2 * roi.radius + 1);
  if (s < 1) throw Error("crop side must be positive");

  const int half = s / 2;
  const int x0 = std::max(0, roi.center_x - half);
  const int y0 = std::max(0, roi.center_y - half);
  const int x1 = std::min(img.width - 1, roi.center_x - half + s - 1);
  const int y1 = std::min(img.height - 1, roi.center_y - half + s - 1);

  GrayImage out{x1 - x0 + 1, y1 - y0 + 1, img.max_val, {}};
  out.pixels.reserve(static_cast<std::size_t>(out.width) * out.height);
  for (int y = y0; y <= y1; ++y) {
    const auto* row = img.pixels.data() + static_cast<std::size_t>(y) * img.width;
    out.pixels.insert(out.pixels.end(), row + x0, row + x1 + 1);
  }
  return out;
}

GrayImage quantize(const GrayImage& img, int levels) {
  if (levels < 2) throw Error("quantization needs at least 2 levels, got " + std::to_string(levels));
  if (levels > img.max_val + 1) {
    throw Error("cannot quantize max_val " + std::to_string(img.max_val) + " to " + std::to_string(levels) +
                " levels");
  }
  GrayImage out{img.width, img.height, levels - 1, {}};
  out.pixels.resize(img.pixels.size());
  const std::int64_t range = static_cast<std::int64_t>(img.max_val) + 1;
  std::transform(img.pixels.begin(), img.pixels.end(), out.pixels.begin(), [&](std::uint16_t g) {
    return static_cast<std::uint16_t>(static_cast<std::int64_t>(g) * levels / range);
  });
  return out;
}

GrayImage stretch_quantize(const GrayImage& img, int levels) {
  if (levels < 2) throw Error("quantization needs at least 2 levels, got " + std::to_string(levels));
  const auto [lo_it, hi_it] = std::minmax_element(img.pixels.begin(), img.pixels.end());
  const std::int64_t lo = lo_it == img.pixels.end() ? 0 : *lo_it;
  const std::int64_t span = (hi_it == img.pixels.end() ? 0 : *hi_it) - lo + 1;

  GrayImage out{img.width, img.height, levels - 1, {}};
  out.pixels.resize(img.pixels.size());
  // Same floor(g * levels / range) rule as quantize(), applied to g - min over
  // the observed range. Integer arithmetic keeps it exact.
  std::transform(img.pixels.begin(), img.pixels.end(), out.pixels.begin(), [&](std::uint16_t g) {
    return static_cast<std::uint16_t>((static_cast<std::int64_t>(g) - lo) * levels / span);
  });
  return out;
}

}  // namespace fknne

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fknne {

/// Row-major grid of integer intensities in [0, max_val].
struct GrayImage {
  int width = 0;
  int height = 0;
  int max_val = 0;
  std::vector<std::uint16_t> pixels;

  int at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::size_t size() const { return pixels.size(); }

  bool operator==(const GrayImage&) const = default;
};

/// Builds an image and checks every invariant (dimensions, length, range).
GrayImage make_image(int width, int height, int max_val, std::vector<std::uint16_t> pixels);

/// Convenience for fixtures: rows of equal length, top row first.
GrayImage image_from_rows(const std::vector<std::vector<int>>& rows, int max_val);

enum class Severity { benign, malignant };

std::string to_string(Severity s);

/// One annotated abnormality. Coordinates use a top-left raster origin.
struct RoiSpec {
  std::string id;
  std::string image;  // reference used to locate the image file
  int center_x = 0;
  int center_y = 0;
  int radius = 1;
  Severity label = Severity::benign;

  bool operator==(const RoiSpec&) const = default;
};

/// Square window of `side` (default 2*radius+1) centred on the ROI, clamped to
/// the image bounds.
GrayImage crop_roi(const GrayImage& img, const RoiSpec& roi, std::optional<int> side = std::nullopt);

/// g' = floor(g * levels / (max_val + 1)); result max_val is levels - 1.
GrayImage quantize(const GrayImage& img, int levels);

/// Min-max stretch of the intensities followed by quantization to `levels`.
/// A constant image maps to level 0.
GrayImage stretch_quantize(const GrayImage& img, int levels);

}  // namespace fknne

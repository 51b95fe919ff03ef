#include "fknne/mias.hpp"

#include <charconv>
#include <map>
#include <sstream>
#include <string>

#include "fknne/error.hpp"

namespace fknne {
namespace {

int parse_field(const std::string& token, const char* what, std::size_t line_no) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error("MIAS index line " + std::to_string(line_no) + ": malformed " + what + " '" + token + "'");
  }
  return value;
}

}  // namespace

std::vector<RoiSpec> parse_mias_index(std::string_view text, int image_height) {
  if (image_height <= 0) throw Error("image height must be positive");
  std::vector<RoiSpec> rois;
  std::map<std::string, int> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty() || tokens.front().starts_with('#')) continue;
    // ref tissue class (severity (x y radius)?)?
    if (tokens.size() <= 4) continue;
    if (tokens.size() != 7) {
      throw Error("MIAS index line " + std::to_string(line_no) + ": expected 7 fields, found " +
                  std::to_string(tokens.size()));
    }
    RoiSpec roi;
    roi.image = tokens[0];
    const auto& severity = tokens[3];
    if (severity == "B") {
      roi.label = Severity::benign;
    } else if (severity == "M") {
      roi.label = Severity::malignant;
    } else {
      throw Error("MIAS index line " + std::to_string(line_no) + ": unknown severity '" + severity + "'");
    }
    roi.center_x = parse_field(tokens[4], "x coordinate", line_no);
    const int y_mias = parse_field(tokens[5], "y coordinate", line_no);
    roi.radius = parse_field(tokens[6], "radius", line_no);
    if (roi.radius < 1) throw Error("MIAS index line " + std::to_string(line_no) + ": radius must be >= 1");
    roi.center_y = image_height - 1 - y_mias;

    const int n = ++seen[roi.image];
    roi.id = n == 1 ? roi.image : roi.image + "_" + std::to_string(n);
    rois.push_back(std::move(roi));
  }
  return rois;
}

}  // namespace fknne

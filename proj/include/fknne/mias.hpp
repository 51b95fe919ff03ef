#pragma once

#include <string_view>
#include <vector>

#include "fknne/image.hpp"

namespace fknne {

inline constexpr int kMiasImageHeight = 1024;

/// Parses a MIAS-style index: `ref tissue class severity x y radius` per line.
///
/// Records without coordinates (normal tissue, or abnormalities annotated
/// without a location) are skipped. Blank lines and lines starting with '#'
/// are ignored. MIAS y coordinates are measured from the bottom edge; they
/// are flipped to a top-left origin using `image_height`.
///
/// An image reference with several abnormalities yields ids `ref`, `ref_2`,
/// `ref_3`, ... in file order.
std::vector<RoiSpec> parse_mias_index(std::string_view text, int image_height = kMiasImageHeight);

}  // namespace fknne

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fknne/image.hpp"

namespace fknne {

enum class PgmEncoding { ascii /* P2 */, binary /* P5 */ };

/// Parses a P2 or P5 graymap. Header comments ('#' to end of line) are
/// allowed between tokens. 16-bit P5 samples are big-endian.
GrayImage read_pgm(std::string_view bytes);
GrayImage read_pgm_file(const std::filesystem::path& path);

std::string write_pgm(const GrayImage& img, PgmEncoding encoding);
void write_pgm_file(const std::filesystem::path& path, const GrayImage& img, PgmEncoding encoding);

}  // namespace fknne

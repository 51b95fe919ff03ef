#include "fknne/pgm.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <sstream>

#include "fknne/error.hpp"

namespace fknne {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = static_cast<unsigned char>(bytes_[pos_]);
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long long integer(const char* what) {
    skip_space_and_comments();
    long long value = 0;
    const char* first = bytes_.data() + pos_;
    const char* last = bytes_.data() + bytes_.size();
    if (first != last && *first == '-') throw Error(std::string("PGM ") + what + " must be positive");
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range) throw Error(std::string("PGM ") + what + " out of range");
    if (ec != std::errc() || ptr == first) {
      throw Error(pos_ >= bytes_.size() ? std::string("truncated PGM: missing ") + what
                                        : std::string("malformed PGM ") + what);
    }
    if (ptr != last && !std::isspace(static_cast<unsigned char>(*ptr)) && *ptr != '#') {
      throw Error(std::string("malformed PGM ") + what);
    }
    pos_ = static_cast<std::size_t>(ptr - bytes_.data());
    return value;
  }

  std::size_t& pos() { return pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage read_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
    throw Error("unknown PGM magic '" + std::string(bytes.substr(0, 2)) + "' (expected P2 or P5)");
  }
  const bool binary = bytes[1] == '5';
  HeaderReader header(bytes.substr(2));
  const long long width = header.integer("width");
  const long long height = header.integer("height");
  const long long max_val = header.integer("max_val");
  if (width <= 0 || height <= 0) throw Error("PGM dimensions must be positive");
  if (max_val <= 0 || max_val > 65535) throw Error("PGM max_val must be in [1, 65535], got " + std::to_string(max_val));
  if (width > (1 << 20) || height > (1 << 20)) throw Error("PGM dimensions too large");

  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::uint16_t> pixels;
  pixels.reserve(count);

  if (binary) {
    // Exactly one whitespace byte separates max_val from the raster.
    std::size_t pos = 2 + header.pos();
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
      throw Error("truncated PGM: missing raster");
    }
    ++pos;
    const std::size_t bytes_per_sample = max_val > 255 ? 2 : 1;
    if (bytes.size() - pos < count * bytes_per_sample) {
      throw Error("truncated PGM: expected " + std::to_string(count * bytes_per_sample) + " raster bytes, found " +
                  std::to_string(bytes.size() - pos));
    }
    const auto* raster = reinterpret_cast<const unsigned char*>(bytes.data() + pos);
    for (std::size_t i = 0; i < count; ++i) {
      const unsigned v = bytes_per_sample == 2 ? (unsigned{raster[2 * i]} << 8) | raster[2 * i + 1] : raster[i];
      pixels.push_back(static_cast<std::uint16_t>(v));
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const long long v = header.integer("pixel data");
      if (v > max_val) throw Error("PGM pixel value " + std::to_string(v) + " exceeds max_val");
      pixels.push_back(static_cast<std::uint16_t>(v));
    }
  }
  return make_image(static_cast<int>(width), static_cast<int>(height), static_cast<int>(max_val), std::move(pixels));
}

GrayImage read_pgm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return read_pgm(bytes);
}

std::string write_pgm(const GrayImage& img, PgmEncoding encoding) {
  std::ostringstream out;
  out << (encoding == PgmEncoding::ascii ? "P2" : "P5") << '\n'
      << img.width << ' ' << img.height << '\n'
      << img.max_val << '\n';
  if (encoding == PgmEncoding::ascii) {
    for (int y = 0; y < img.height; ++y) {
      for (int x = 0; x < img.width; ++x) {
        if (x) out << ' ';
        out << img.at(x, y);
      }
      out << '\n';
    }
  } else {
    for (const auto v : img.pixels) {
      if (img.max_val > 255) out.put(static_cast<char>(v >> 8));
      out.put(static_cast<char>(v & 0xff));
    }
  }
  return out.str();
}

void write_pgm_file(const std::filesystem::path& path, const GrayImage& img, PgmEncoding encoding) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  const auto bytes = write_pgm(img, encoding);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace fknne

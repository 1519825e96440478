#include "snrlab/pfm.hpp"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

namespace snrlab {
namespace {

float byteswap_float(float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  bits = ((bits & 0x000000ffu) << 24) | ((bits & 0x0000ff00u) << 8) |
         ((bits & 0x00ff0000u) >> 8) | ((bits & 0xff000000u) >> 24);
  std::memcpy(&v, &bits, 4);
  return v;
}

bool host_is_little_endian() {
  const std::uint16_t probe = 1;
  unsigned char byte;
  std::memcpy(&byte, &probe, 1);
  return byte == 1;
}

std::string next_token(std::istream& is) {
  std::string tok;
  if (!(is >> tok)) throw std::runtime_error("pfm: truncated header");
  return tok;
}

}  // namespace

Image read_pfm(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("pfm: cannot open " + path.string());

  if (next_token(is) != "Pf")
    throw std::runtime_error("pfm: " + path.string() + " is not a grayscale Pf file");
  const long w = std::stol(next_token(is));
  const long h = std::stol(next_token(is));
  const double scale = std::stod(next_token(is));
  if (w < 1 || h < 1) throw std::runtime_error("pfm: bad dimensions in " + path.string());
  if (scale == 0.0) throw std::runtime_error("pfm: zero scale in " + path.string());
  is.get();  // single whitespace byte after the header

  const bool file_little = scale < 0.0;
  const bool swap = file_little != host_is_little_endian();

  Image img;
  img.width = (std::size_t)w;
  img.height = (std::size_t)h;
  img.pixels.resize(img.width * img.height);
  std::vector<float> row(img.width);
  // PFM stores rows bottom-up.
  for (std::size_t y = 0; y < img.height; ++y) {
    is.read(reinterpret_cast<char*>(row.data()), (std::streamsize)(img.width * 4));
    if (!is) throw std::runtime_error("pfm: truncated pixel data in " + path.string());
    const std::size_t target_y = img.height - 1 - y;
    for (std::size_t x = 0; x < img.width; ++x)
      img.at(x, target_y) = (double)(swap ? byteswap_float(row[x]) : row[x]);
  }
  return img;
}

void write_pfm(const std::filesystem::path& path, const Image& img) {
  if (img.width < 1 || img.height < 1 || img.pixels.size() != img.width * img.height)
    throw std::invalid_argument("pfm: malformed image");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("pfm: cannot write " + path.string());

  const bool little = host_is_little_endian();
  os << "Pf\n" << img.width << " " << img.height << "\n" << (little ? "-1.0" : "1.0") << "\n";
  std::vector<float> row(img.width);
  for (std::size_t y = 0; y < img.height; ++y) {
    const std::size_t src_y = img.height - 1 - y;
    for (std::size_t x = 0; x < img.width; ++x) row[x] = (float)img.at(x, src_y);
    os.write(reinterpret_cast<const char*>(row.data()), (std::streamsize)(img.width * 4));
  }
  if (!os) throw std::runtime_error("pfm: write failed for " + path.string());
}

}  // namespace snrlab

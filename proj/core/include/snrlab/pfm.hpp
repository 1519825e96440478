#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

namespace snrlab {

// Grayscale image with row-major double pixels; (0,0) is the top-left.
struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> pixels;

  double& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
  double at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
};

// Portable float map, single channel ("Pf"), little-endian, bottom-up rows.
// Values pass through float32, so write/read round-trips are exact at float
// precision.
Image read_pfm(const std::filesystem::path& path);
void write_pfm(const std::filesystem::path& path, const Image& image);

}  // namespace snrlab

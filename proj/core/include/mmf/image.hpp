#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace mmf {

struct Dims {
  int width = 0;
  int height = 0;
  bool operator==(const Dims&) const = default;
  int64_t count() const { return static_cast<int64_t>(width) * height; }
};

// 8-bit grayscale image, row-major.
struct Image8 {
  Dims dims;
  std::vector<uint8_t> pixels;
};

// Binary image: every pixel is 0 or 1, stored one byte per pixel in memory.
struct BinaryImage {
  Dims dims;
  std::vector<uint8_t> pixels;
};

// Binary input pattern with its digit class.
struct DigitImage {
  BinaryImage image;
  uint8_t label = 0;  // 0..9
};

// Output intensity image. Nonnegative; the core mask marks the inscribed
// circular fiber-core region used when computing masked statistics.
struct SpecklePattern {
  Dims dims;
  std::vector<double> intensity;
  std::shared_ptr<const std::vector<uint8_t>> core_mask;
};

// Inscribed circle of diameter min(width, height), centered on the grid.
inline std::vector<uint8_t> make_core_mask(Dims d) {
  std::vector<uint8_t> mask(static_cast<size_t>(d.count()), 0);
  const double cx = (d.width - 1) / 2.0;
  const double cy = (d.height - 1) / 2.0;
  const double r = std::min(d.width, d.height) / 2.0;
  for (int y = 0; y < d.height; ++y)
    for (int x = 0; x < d.width; ++x) {
      const double dx = x - cx, dy = y - cy;
      if (dx * dx + dy * dy <= r * r) mask[static_cast<size_t>(y) * d.width + x] = 1;
    }
  return mask;
}

}  // namespace mmf

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace planvec {

// 8-bit raster, row-major, interleaved channels (1 = grayscale, 3 = RGB).
struct RasterImage {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> data;

  static RasterImage make(int width, int height, int channels, std::uint8_t fill = 0);

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  std::uint8_t& at(int x, int y, int c = 0) {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::uint8_t at(int x, int y, int c = 0) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
};

// Binary occupancy map: 1 = ink (wall), 0 = background.
struct BinaryImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // one byte per pixel, strictly 0 or 1

  static BinaryImage make(int width, int height, std::uint8_t fill = 0);

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  bool ink(int x, int y) const {
    return data[static_cast<std::size_t>(y) * width + x] != 0;
  }
  void set(int x, int y, bool v) {
    data[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
  }
  std::size_t ink_count() const;
};

// RGB -> single channel via the rounded mean of the three channels.
// Grayscale input is returned unchanged.
RasterImage to_grayscale(const RasterImage& img);

// Pixel is ink iff its intensity is strictly below `threshold`.
// Requires a single-channel image and threshold in [0, 255].
BinaryImage binarize(const RasterImage& gray, int threshold);

// Ink -> 0, background -> 255 (the raster the corner detector consumes
// when it runs on the binarized view).
RasterImage binary_to_gray(const BinaryImage& binary);

// Ink -> black, background -> white, 3 channels (for debug dumps).
RasterImage to_rgb(const BinaryImage& binary);

}  // namespace planvec

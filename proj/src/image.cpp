#include "planvec/image.hpp"

#include <stdexcept>

#include "planvec/kernels.hpp"

namespace planvec {

RasterImage RasterImage::make(int width, int height, int channels,
                              std::uint8_t fill) {
  if (width <= 0 || height <= 0 || (channels != 1 && channels != 3))
    throw std::invalid_argument("RasterImage: bad dimensions or channel count");
  RasterImage img;
  img.width = width;
  img.height = height;
  img.channels = channels;
  img.data.assign(static_cast<std::size_t>(width) * height * channels, fill);
  return img;
}

BinaryImage BinaryImage::make(int width, int height, std::uint8_t fill) {
  if (width <= 0 || height <= 0 || fill > 1)
    throw std::invalid_argument("BinaryImage: bad dimensions or fill value");
  BinaryImage img;
  img.width = width;
  img.height = height;
  img.data.assign(static_cast<std::size_t>(width) * height, fill);
  return img;
}

std::size_t BinaryImage::ink_count() const {
  std::size_t n = 0;
  for (std::uint8_t v : data) n += v;
  return n;
}

RasterImage to_grayscale(const RasterImage& img) {
  if (img.channels == 1) return img;
  if (img.channels != 3)
    throw std::invalid_argument("to_grayscale: expected 1 or 3 channels");
  RasterImage out = RasterImage::make(img.width, img.height, 1);
  kernels::gray_from_rgb(img.data.data(), out.data.data(), img.pixel_count());
  return out;
}

BinaryImage binarize(const RasterImage& gray, int threshold) {
  if (gray.channels != 1)
    throw std::invalid_argument("binarize: expected a single-channel image");
  if (threshold < 0 || threshold > 255)
    throw std::invalid_argument("binarize: threshold must be in [0, 255]");
  BinaryImage out = BinaryImage::make(gray.width, gray.height);
  kernels::binarize_u8(gray.data.data(), static_cast<std::uint8_t>(threshold),
                       out.data.data(), gray.pixel_count());
  return out;
}

RasterImage binary_to_gray(const BinaryImage& binary) {
  RasterImage out = RasterImage::make(binary.width, binary.height, 1);
  const std::size_t n = binary.pixel_count();
  for (std::size_t i = 0; i < n; ++i) out.data[i] = binary.data[i] ? 0 : 255;
  return out;
}

RasterImage to_rgb(const BinaryImage& binary) {
  RasterImage out = RasterImage::make(binary.width, binary.height, 3);
  const std::size_t n = binary.pixel_count();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint8_t v = binary.data[i] ? 0 : 255;
    out.data[3 * i] = out.data[3 * i + 1] = out.data[3 * i + 2] = v;
  }
  return out;
}

}  // namespace planvec

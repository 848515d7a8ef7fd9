#pragma once

#include <string>

#include "planvec/image.hpp"

namespace planvec {

// Loads a PNG, PGM (P5) or PPM (P6) file; format is sniffed from the magic
// bytes, not the extension.  PNG alpha is composited over white; palette and
// sub-8-bit images are expanded; 16-bit channels are rejected for PGM/PPM
// and narrowed for PNG.  Result has 1 or 3 channels.
// Throws FormatError on unreadable or undecodable input.
RasterImage load_image(const std::string& path);

// Saves by extension: .png, .pgm (single channel only), .ppm (RGB only).
// Throws FormatError on an unsupported extension/channel combination or
// write failure.
void save_image(const RasterImage& img, const std::string& path);

}  // namespace planvec

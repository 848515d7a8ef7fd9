#include "planvec/image_io.hpp"

#include <png.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include "planvec/error.hpp"

namespace planvec {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// ---- PGM / PPM ------------------------------------------------------------

// Reads one whitespace/comment-separated ASCII integer from a PNM header.
int read_pnm_int(std::FILE* f, const std::string& path) {
  int ch = std::fgetc(f);
  while (ch != EOF && (std::isspace(ch) || ch == '#')) {
    if (ch == '#') {
      while (ch != EOF && ch != '\n') ch = std::fgetc(f);
    }
    ch = std::fgetc(f);
  }
  if (ch == EOF || !std::isdigit(ch))
    throw FormatError(path + ": malformed PNM header");
  long value = 0;
  while (ch != EOF && std::isdigit(ch)) {
    value = value * 10 + (ch - '0');
    if (value > 1000000) throw FormatError(path + ": PNM header value out of range");
    ch = std::fgetc(f);
  }
  if (ch != EOF) std::ungetc(ch, f);
  return static_cast<int>(value);
}

RasterImage load_pnm(std::FILE* f, int channels, const std::string& path) {
  int w = read_pnm_int(f, path);
  int h = read_pnm_int(f, path);
  int maxval = read_pnm_int(f, path);
  if (w <= 0 || h <= 0) throw FormatError(path + ": bad PNM dimensions");
  if (maxval <= 0 || maxval > 65535) throw FormatError(path + ": bad PNM maxval");
  if (maxval > 255) throw FormatError(path + ": 16-bit PNM not supported");
  int sep = std::fgetc(f);
  if (sep == EOF || !std::isspace(sep))
    throw FormatError(path + ": malformed PNM header");
  RasterImage img = RasterImage::make(w, h, channels);
  if (std::fread(img.data.data(), 1, img.data.size(), f) != img.data.size())
    throw FormatError(path + ": truncated PNM pixel data");
  return img;
}

void save_pnm(const RasterImage& img, const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) throw FormatError(path + ": cannot open for writing");
  std::string header = (img.channels == 1 ? "P5\n" : "P6\n") +
                       std::to_string(img.width) + " " +
                       std::to_string(img.height) + "\n255\n";
  if (std::fwrite(header.data(), 1, header.size(), f.get()) != header.size() ||
      std::fwrite(img.data.data(), 1, img.data.size(), f.get()) != img.data.size())
    throw FormatError(path + ": write failed");
}

// ---- PNG ------------------------------------------------------------------

RasterImage load_png(std::FILE* f, const std::string& path) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw FormatError(path + ": png init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw FormatError(path + ": png init failed");
  }
  std::vector<png_bytep> row_ptrs;
  std::vector<std::uint8_t> pixels;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError(path + ": undecodable PNG");
  }
  png_init_io(png, f);
  png_read_info(png, info);

  png_uint_32 w = png_get_image_width(png, info);
  png_uint_32 h = png_get_image_height(png, info);
  int color = png_get_color_type(png, info);
  int depth = png_get_bit_depth(png, info);
  if (w == 0 || h == 0 || w > 1u << 20 || h > 1u << 20) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError(path + ": unsupported PNG dimensions");
  }

  if (depth == 16) png_set_strip_16(png);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  int channels = png_get_channels(png, info);
  std::size_t stride = png_get_rowbytes(png, info);
  pixels.resize(stride * h);
  row_ptrs.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) row_ptrs[y] = pixels.data() + y * stride;
  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  // Composite any alpha over a white page and drop to 1 or 3 channels.
  int out_channels = (channels == 1 || channels == 2) ? 1 : 3;
  RasterImage img = RasterImage::make(static_cast<int>(w), static_cast<int>(h), out_channels);
  const std::size_t n = img.pixel_count();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t* src = pixels.data() + i * channels;
    if (channels == 1) {
      img.data[i] = src[0];
    } else if (channels == 2) {
      unsigned a = src[1];
      img.data[i] = static_cast<std::uint8_t>((src[0] * a + 255 * (255 - a) + 127) / 255);
    } else if (channels == 3) {
      std::memcpy(&img.data[3 * i], src, 3);
    } else {
      unsigned a = src[3];
      for (int c = 0; c < 3; ++c)
        img.data[3 * i + c] =
            static_cast<std::uint8_t>((src[c] * a + 255 * (255 - a) + 127) / 255);
    }
  }
  return img;
}

void save_png(const RasterImage& img, const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "wb"));
  if (!f) throw FormatError(path + ": cannot open for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw FormatError(path + ": png init failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw FormatError(path + ": png init failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw FormatError(path + ": PNG write failed");
  }
  png_init_io(png, f.get());
  png_set_IHDR(png, info, img.width, img.height, 8,
               img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_bytep> rows(img.height);
  std::size_t stride = static_cast<std::size_t>(img.width) * img.channels;
  for (int y = 0; y < img.height; ++y)
    rows[y] = const_cast<png_bytep>(img.data.data() + y * stride);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

bool has_suffix(const std::string& s, const char* suffix) {
  std::size_t n = std::strlen(suffix);
  return s.size() >= n && s.compare(s.size() - n, n, suffix) == 0;
}

}  // namespace

RasterImage load_image(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) throw FormatError(path + ": cannot open file");
  unsigned char magic[8] = {0};
  std::size_t got = std::fread(magic, 1, sizeof magic, f.get());
  if (got >= 8 && png_sig_cmp(magic, 0, 8) == 0) {
    std::rewind(f.get());
    return load_png(f.get(), path);
  }
  if (got >= 2 && magic[0] == 'P' && (magic[1] == '5' || magic[1] == '6')) {
    std::fseek(f.get(), 2, SEEK_SET);
    return load_pnm(f.get(), magic[1] == '5' ? 1 : 3, path);
  }
  throw FormatError(path + ": not a PNG, PGM or PPM file");
}

void save_image(const RasterImage& img, const std::string& path) {
  if (img.width <= 0 || img.height <= 0)
    throw std::invalid_argument("save_image: empty image");
  if (has_suffix(path, ".png")) {
    save_png(img, path);
  } else if (has_suffix(path, ".pgm")) {
    if (img.channels != 1) throw FormatError(path + ": PGM requires 1 channel");
    save_pnm(img, path);
  } else if (has_suffix(path, ".ppm")) {
    if (img.channels != 3) throw FormatError(path + ": PPM requires 3 channels");
    save_pnm(img, path);
  } else {
    throw FormatError(path + ": unsupported output extension (use .png/.pgm/.ppm)");
  }
}

}  // namespace planvec

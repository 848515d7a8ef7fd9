#include <doctest.h>

#include <png.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "planvec/error.hpp"
#include "planvec/image_io.hpp"
#include "planvec/synth.hpp"

using namespace planvec;
namespace fs = std::filesystem;

namespace {

fs::path tmp_dir() {
  const fs::path dir = fs::temp_directory_path() / "planvec_io_tests";
  fs::create_directories(dir);
  return dir;
}

std::string tmp_file(const std::string& name) {
  return (tmp_dir() / name).string();
}

void write_bytes(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
}

RasterImage random_image(std::uint64_t seed, int w, int h, int channels) {
  RasterImage img = RasterImage::make(w, h, channels);
  SplitMix64 rng(seed);
  for (auto& b : img.data) b = static_cast<std::uint8_t>(rng.below(256));
  return img;
}

// Writes an RGBA PNG directly through libpng so the loader's alpha
// compositing can be tested without a second code path in the library.
void write_rgba_png(const std::string& path, int w, int h,
                    const std::vector<std::uint8_t>& rgba) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  REQUIRE(fp != nullptr);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png_create_info_struct(png);
  REQUIRE(setjmp(png_jmpbuf(png)) == 0);
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), 8,
               PNG_COLOR_TYPE_RGBA, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  std::vector<png_bytep> rows(static_cast<std::size_t>(h));
  for (int y = 0; y < h; ++y)
    rows[static_cast<std::size_t>(y)] =
        const_cast<png_bytep>(rgba.data() + static_cast<std::size_t>(y) * w * 4);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

}  // namespace

TEST_CASE("PGM and PPM round trip exactly") {
  const RasterImage gray = random_image(21, 13, 7, 1);
  const std::string pgm = tmp_file("roundtrip.pgm");
  save_image(gray, pgm);
  const RasterImage back = load_image(pgm);
  CHECK(back.width == gray.width);
  CHECK(back.height == gray.height);
  CHECK(back.channels == 1);
  CHECK(back.data == gray.data);

  const RasterImage rgb = random_image(22, 9, 4, 3);
  const std::string ppm = tmp_file("roundtrip.ppm");
  save_image(rgb, ppm);
  const RasterImage back3 = load_image(ppm);
  CHECK(back3.channels == 3);
  CHECK(back3.data == rgb.data);
}

TEST_CASE("PNG round trips both channel counts") {
  for (int channels : {1, 3}) {
    const RasterImage img = random_image(23 + channels, 17, 11, channels);
    const std::string path = tmp_file("roundtrip" + std::to_string(channels) + ".png");
    save_image(img, path);
    const RasterImage back = load_image(path);
    CHECK(back.width == img.width);
    CHECK(back.height == img.height);
    CHECK(back.channels == channels);
    CHECK(back.data == img.data);
  }
}

TEST_CASE("PNG alpha is composited over white") {
  // Four pixels: opaque red, fully transparent, half-transparent black,
  // half-transparent white.
  const std::vector<std::uint8_t> rgba = {
      255, 0,   0,   255,  //
      10,  20,  30,  0,    //
      0,   0,   0,   128,  //
      255, 255, 255, 128,  //
  };
  const std::string path = tmp_file("alpha.png");
  write_rgba_png(path, 4, 1, rgba);
  const RasterImage img = load_image(path);
  REQUIRE(img.channels == 3);
  CHECK(img.at(0, 0, 0) == 255);
  CHECK(img.at(0, 0, 1) == 0);
  CHECK(img.at(1, 0, 0) == 255);  // transparent resolves to white
  CHECK(img.at(1, 0, 1) == 255);
  CHECK(img.at(1, 0, 2) == 255);
  // (0*128 + 255*127 + 127) / 255 = 127-ish; assert the exact rule
  const int half_black = (0 * 128 + 255 * (255 - 128) + 127) / 255;
  CHECK(img.at(2, 0, 0) == half_black);
  CHECK(img.at(3, 0, 0) == 255);  // white over white stays white
}

TEST_CASE("PNM headers allow comments and flexible whitespace") {
  const std::string path = tmp_file("comment.pgm");
  write_bytes(path, "P5 # magic\n# a comment line\n 3\t2 #dims\n255\nABCDEF");
  const RasterImage img = load_image(path);
  CHECK(img.width == 3);
  CHECK(img.height == 2);
  CHECK(img.at(0, 0) == 'A');
  CHECK(img.at(2, 1) == 'F');
}

TEST_CASE("loader rejects what it cannot decode") {
  const std::string bad_magic = tmp_file("bad_magic.bin");
  write_bytes(bad_magic, "GIF89a not a supported format");
  CHECK_THROWS_AS(load_image(bad_magic), FormatError);

  const std::string sixteen = tmp_file("deep.pgm");
  write_bytes(sixteen, "P5\n2 2\n65535\n" + std::string(8, 'x'));
  CHECK_THROWS_WITH_AS(load_image(sixteen),
                       doctest::Contains("16-bit"), FormatError);

  const std::string truncated = tmp_file("short.pgm");
  write_bytes(truncated, "P5\n10 10\n255\nonly a few bytes");
  CHECK_THROWS_AS(load_image(truncated), FormatError);

  const std::string broken_png = tmp_file("broken.png");
  write_bytes(broken_png, std::string("\x89PNG\r\n\x1a\n", 8) + "garbage after the signature");
  CHECK_THROWS_AS(load_image(broken_png), FormatError);

  CHECK_THROWS_AS(load_image(tmp_file("does_not_exist.png")), FormatError);
}

TEST_CASE("saver rejects unsupported extension/channel combinations") {
  const RasterImage gray = random_image(31, 4, 4, 1);
  const RasterImage rgb = random_image(32, 4, 4, 3);
  CHECK_THROWS_AS(save_image(gray, tmp_file("plan.bmp")), FormatError);
  CHECK_THROWS_AS(save_image(rgb, tmp_file("plan.pgm")), FormatError);
  CHECK_THROWS_AS(save_image(gray, tmp_file("plan.ppm")), FormatError);
  CHECK_THROWS_AS(save_image(gray, "/nonexistent-dir/x.png"), FormatError);
}

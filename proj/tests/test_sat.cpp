#include <doctest.h>

#include <stdexcept>

#include "planvec/sat.hpp"
#include "planvec/synth.hpp"

using namespace planvec;

namespace {

BinaryImage random_binary(std::uint64_t seed, int w, int h, double p) {
  BinaryImage img = BinaryImage::make(w, h);
  SplitMix64 rng(seed);
  for (auto& v : img.data) v = rng.next_double() < p ? 1 : 0;
  return img;
}

std::uint32_t pixel_count(const BinaryImage& img, int x0, int y0, int x1, int y1) {
  std::uint32_t n = 0;
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) n += img.ink(x, y);
  return n;
}

}  // namespace

TEST_CASE("summed-area table fixed examples") {
  BinaryImage all = BinaryImage::make(2, 2, 1);
  const SummedAreaTable sat(all);
  CHECK(sat.cum(2, 2) == 4);
  CHECK(sat.rect_ink(0, 0, 2, 2) == 4);
  CHECK(sat.rect_ink(1, 1, 2, 2) == 1);
  CHECK(sat.rect_ink(0, 0, 0, 0) == 0);  // empty rect
  CHECK(sat.rect_ink(1, 0, 1, 2) == 0);  // zero-width rect

  BinaryImage none = BinaryImage::make(5, 3);
  const SummedAreaTable empty(none);
  for (int j = 0; j <= 3; ++j)
    for (int i = 0; i <= 5; ++i) CHECK(empty.cum(i, j) == 0);
}

TEST_CASE("every rectangle of every small image matches the pixel loop") {
  for (int w = 1; w <= 8; ++w)
    for (int h = 1; h <= 8; ++h) {
      const BinaryImage img =
          random_binary(1000 + static_cast<std::uint64_t>(w) * 17 + h, w, h, 0.5);
      const SummedAreaTable sat(img);
      for (int x0 = 0; x0 <= w; ++x0)
        for (int y0 = 0; y0 <= h; ++y0)
          for (int x1 = x0; x1 <= w; ++x1)
            for (int y1 = y0; y1 <= h; ++y1)
              REQUIRE(sat.rect_ink(x0, y0, x1, y1) ==
                      pixel_count(img, x0, y0, x1, y1));
    }
}

TEST_CASE("random rectangles on a large random image") {
  const BinaryImage img = random_binary(61, 512, 512, 0.37);
  const SummedAreaTable sat(img);
  SplitMix64 rng(62);
  for (int i = 0; i < 2000; ++i) {
    int x0 = static_cast<int>(rng.below(513));
    int x1 = static_cast<int>(rng.below(513));
    int y0 = static_cast<int>(rng.below(513));
    int y1 = static_cast<int>(rng.below(513));
    if (x0 > x1) std::swap(x0, x1);
    if (y0 > y1) std::swap(y0, y1);
    REQUIRE(sat.rect_ink(x0, y0, x1, y1) == pixel_count(img, x0, y0, x1, y1));
  }
}

TEST_CASE("rect_ink validates bounds") {
  const BinaryImage img = random_binary(63, 10, 10, 0.5);
  const SummedAreaTable sat(img);
  CHECK_THROWS_AS(sat.rect_ink(-1, 0, 5, 5), std::invalid_argument);
  CHECK_THROWS_AS(sat.rect_ink(0, 0, 11, 5), std::invalid_argument);
  CHECK_THROWS_AS(sat.rect_ink(0, -2, 5, 5), std::invalid_argument);
  CHECK_THROWS_AS(sat.rect_ink(0, 0, 5, 11), std::invalid_argument);
  CHECK_THROWS_AS(sat.rect_ink(6, 0, 5, 5), std::invalid_argument);   // x1 < x0
  CHECK_THROWS_AS(sat.rect_ink(0, 8, 5, 7), std::invalid_argument);   // y1 < y0
}

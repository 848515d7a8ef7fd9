#include <doctest.h>

#include <algorithm>
#include <vector>

#include "planvec/postprocess.hpp"
#include "planvec/synth.hpp"

using namespace planvec;

namespace {

std::vector<std::uint8_t> paint_union(int size, const std::vector<WallRect>& rects) {
  std::vector<std::uint8_t> img(static_cast<std::size_t>(size) * size, 0);
  for (const auto& r : rects)
    for (int y = std::max(0, r.y0); y < std::min(size, r.y1); ++y)
      for (int x = std::max(0, r.x0); x < std::min(size, r.x1); ++x)
        img[static_cast<std::size_t>(y) * size + x] = 1;
  return img;
}

std::vector<WallRect> random_rects(SplitMix64& rng, int max_count, int canvas) {
  const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_count)));
  std::vector<WallRect> rects;
  for (int i = 0; i < n; ++i) {
    const int x0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(canvas - 1)));
    const int y0 = static_cast<int>(rng.below(static_cast<std::uint64_t>(canvas - 1)));
    const int w = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(canvas - x0)));
    const int h = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(canvas - y0)));
    rects.push_back({x0, y0, x0 + w, y0 + h});
  }
  return rects;
}

}  // namespace

TEST_CASE("mergeable recognizes exactly the rectangle-union cases") {
  CHECK(mergeable({0, 0, 10, 4}, {10, 0, 20, 4}));   // abutting, same rows
  CHECK(mergeable({0, 0, 12, 4}, {8, 0, 20, 4}));    // overlapping, same rows
  CHECK(mergeable({5, 2, 9, 7}, {5, 7, 9, 11}));     // abutting, same columns
  CHECK(mergeable({0, 0, 4, 4}, {0, 0, 4, 4}));      // identical
  CHECK_FALSE(mergeable({0, 0, 10, 4}, {10, 0, 20, 6}));  // height differs
  CHECK_FALSE(mergeable({0, 0, 10, 4}, {11, 0, 20, 4}));  // gap
  CHECK_FALSE(mergeable({0, 0, 10, 4}, {3, 4, 7, 8}));    // partial column overlap
}

TEST_CASE("remove_contained drops subsets and keeps the first duplicate") {
  const WallRect a{0, 0, 100, 10};
  const WallRect b{20, 0, 40, 10};
  CHECK(remove_contained({a, b}) == std::vector<WallRect>{a});
  CHECK(remove_contained({b, a}) == std::vector<WallRect>{a});
  CHECK(remove_contained({a, a}) == std::vector<WallRect>{a});

  const WallRect c{200, 200, 210, 220};
  CHECK(remove_contained({a, c}) == std::vector<WallRect>{a, c});

  // Boundary contact counts as containment.
  CHECK(remove_contained({a, {0, 0, 100, 5}}) == std::vector<WallRect>{a});
  CHECK(remove_contained({}).empty());
}

TEST_CASE("merge_rects fuses chains and sorts its output") {
  const auto merged =
      merge_rects({{10, 0, 20, 4}, {0, 0, 10, 4}, {20, 0, 30, 4}});
  CHECK(merged == std::vector<WallRect>{{0, 0, 30, 4}});

  const auto overlap = merge_rects({{0, 0, 12, 4}, {8, 0, 20, 4}});
  CHECK(overlap == std::vector<WallRect>{{0, 0, 20, 4}});

  const auto keep = merge_rects({{0, 0, 10, 4}, {10, 0, 20, 6}});
  CHECK(keep == std::vector<WallRect>{{0, 0, 10, 4}, {10, 0, 20, 6}});

  // A merge can enable another on the perpendicular axis: two half-width
  // rects fuse into a column that then fuses with the rect below.
  const auto cascade =
      merge_rects({{0, 0, 5, 10}, {5, 0, 10, 10}, {0, 10, 10, 20}});
  CHECK(cascade == std::vector<WallRect>{{0, 0, 10, 20}});
}

TEST_CASE("postprocess fixed examples") {
  CHECK(postprocess(std::vector<WallRect>{}).empty());

  // Contained + abutting: drop B, merge A with C.
  const WallRect a{0, 0, 100, 10};
  const WallRect b{20, 0, 40, 10};
  const WallRect c{100, 0, 130, 10};
  CHECK(postprocess(std::vector<WallRect>{a, b, c}) ==
        std::vector<WallRect>{{0, 0, 130, 10}});

  VectorPlan plan;
  plan.canvas_width = 200;
  plan.canvas_height = 50;
  plan.walls = {a, b, c};
  const VectorPlan out = postprocess(plan);
  CHECK(out.canvas_width == 200);
  CHECK(out.canvas_height == 50);
  CHECK(out.walls == std::vector<WallRect>{{0, 0, 130, 10}});
}

TEST_CASE("postprocess algebra on random multisets") {
  SplitMix64 rng(81);
  for (int trial = 0; trial < 300; ++trial) {
    const auto rects = random_rects(rng, 12, 128);
    const auto result = postprocess(rects);

    // Pixel-set preservation against the rasterized-union oracle.
    CHECK(paint_union(128, result) == paint_union(128, rects));

    // No contained pair and no mergeable pair remains.
    for (std::size_t i = 0; i < result.size(); ++i)
      for (std::size_t j = 0; j < result.size(); ++j) {
        if (i == j) continue;
        CHECK_FALSE(result[i].inside(result[j]));
        CHECK_FALSE(mergeable(result[i], result[j]));
      }

    // Wall count never increases.
    CHECK(result.size() <= rects.size());

    // Idempotence.
    CHECK(postprocess(result) == result);

    // Order-insensitivity.
    auto shuffled = rects;
    for (std::size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
    CHECK(postprocess(shuffled) == result);
  }
}

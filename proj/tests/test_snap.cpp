#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "planvec/snap.hpp"
#include "planvec/synth.hpp"

using namespace planvec;

namespace {

// Exhaustive pairwise grouping oracle: repeatedly union any two values
// whose clusters contain members within tol of each other (transitive
// closure of the "within tol" relation on a line = single linkage).
std::vector<double> oracle_snap(std::vector<double> values, double tol) {
  const std::size_t n = values.size();
  std::vector<std::size_t> group(n);
  std::iota(group.begin(), group.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (group[i] != group[j] && std::abs(values[i] - values[j]) <= tol) {
          const std::size_t from = group[j], to = group[i];
          for (auto& g : group)
            if (g == from) g = to;
          changed = true;
        }
  }
  std::vector<double> means;
  std::vector<char> seen(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[group[i]]) continue;
    seen[group[i]] = 1;
    double sum = 0;
    int count = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (group[j] == group[i]) {
        sum += values[j];
        ++count;
      }
    means.push_back(sum / count);
  }
  std::sort(means.begin(), means.end());
  return means;
}

}  // namespace

TEST_CASE("snap_axis basics") {
  CHECK(snap_axis({}, 2.0).empty());
  CHECK(snap_axis({5.0}, 2.0) == std::vector<double>{5.0});

  const auto two = snap_axis({9.8, 50.1, 10.2}, 2.0);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == doctest::Approx(10.0));
  CHECK(two[1] == doctest::Approx(50.1));

  // Chaining: 0 and 3.0 are farther than tol apart but linked through 1.5.
  const auto chain = snap_axis({0.0, 1.5, 3.0}, 2.0);
  REQUIRE(chain.size() == 1);
  CHECK(chain[0] == doctest::Approx(1.5));

  CHECK_THROWS_AS(snap_axis({1.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(snap_axis({1.0}, -1.0), std::invalid_argument);
}

TEST_CASE("snap_axis matches the pairwise-grouping oracle") {
  SplitMix64 rng(51);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(40);
    std::vector<double> values(n);
    for (auto& v : values) v = rng.next_double() * 100.0;
    const double tol = 0.5 + rng.next_double() * 5.0;

    const auto got = snap_axis(values, tol);
    const auto expected = oracle_snap(values, tol);
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i)
      CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-12));

    // Output invariants: strictly increasing, gaps > tol, fixed point.
    for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i] - got[i - 1] > tol);
    const auto again = snap_axis(got, tol);
    CHECK(again == got);

    // Permutation invariance.
    std::vector<double> shuffled = values;
    for (std::size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
    CHECK(snap_axis(shuffled, tol) == got);
  }
}

TEST_CASE("snap_corners clusters each axis independently") {
  std::vector<CornerPoint> square = {
      {10, 10, 4}, {30, 10, 3}, {10, 20, 2}, {30, 20, 1}};
  auto [grid, snapped] = snap_corners(square, 2.0);
  CHECK(grid.xs == std::vector<double>{10, 30});
  CHECK(grid.ys == std::vector<double>{10, 20});
  REQUIRE(snapped.size() == 4);
  CHECK(snapped[0].x_index == 0);
  CHECK(snapped[0].y_index == 0);
  CHECK(snapped[1].x_index == 1);
  CHECK(snapped[1].y_index == 0);
  CHECK(snapped[2].x_index == 0);
  CHECK(snapped[2].y_index == 1);
  CHECK(snapped[3].x_index == 1);
  CHECK(snapped[3].y_index == 1);

  // Two corners share one snapped x-line (mean of 10.2 and 9.8).
  std::vector<CornerPoint> pair = {{10.2, 5, 1}, {9.8, 95, 1}};
  auto [g2, s2] = snap_corners(pair, 2.0);
  REQUIRE(g2.xs.size() == 1);
  CHECK(g2.xs[0] == doctest::Approx(10.0));
  CHECK(s2[0].x_index == 0);
  CHECK(s2[1].x_index == 0);
  CHECK(s2[0].y_index == 0);
  CHECK(s2[1].y_index == 1);
}

TEST_CASE("jittered rectangle corners still snap to a 2x2 grid") {
  SplitMix64 rng(52);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<CornerPoint> corners;
    const double xs[2] = {40, 160}, ys[2] = {30, 90};
    for (double cx : xs)
      for (double cy : ys) {
        // Several detections per corner, each off by at most 1 px.
        for (int i = 0; i < 3; ++i)
          corners.push_back({cx + (rng.next_double() * 2.0 - 1.0),
                             cy + (rng.next_double() * 2.0 - 1.0), 1.0});
      }
    auto [grid, snapped] = snap_corners(corners, 3.0);
    CHECK(grid.xs.size() == 2);
    CHECK(grid.ys.size() == 2);
    for (std::size_t axis_i = 0; axis_i < grid.xs.size(); ++axis_i)
      CHECK(std::abs(grid.xs[axis_i] - xs[axis_i]) <= 1.0);
  }
}

TEST_CASE("nearest-line mapping can cross cluster boundaries, ties go low") {
  // A chained cluster {0, 5, 10, 15} (every gap <= tol) has mean 7.5; its
  // rightmost member is 7.5 away.  A second cluster provides a line that is
  // only 6 away, so "nearest line" wins over cluster membership.
  std::vector<CornerPoint> cross = {
      {0, 0, 1}, {5, 0, 1}, {10, 0, 1}, {15, 0, 1}, {21, 0, 1}};
  auto [g1, s1] = snap_corners(cross, 5.0);
  REQUIRE(g1.xs.size() == 2);
  CHECK(g1.xs[0] == doctest::Approx(7.5));
  CHECK(g1.xs[1] == doctest::Approx(21.0));
  CHECK(s1[3].x_index == 1);  // |15-21| = 6 < |15-7.5| = 7.5

  // Move the far line to 22.5: the member at 15 is now exactly equidistant
  // (7.5 both ways) and the tie resolves to the lower line.
  std::vector<CornerPoint> tie = {
      {0, 0, 1}, {5, 0, 1}, {10, 0, 1}, {15, 0, 1}, {22.5, 0, 1}};
  auto [g2, s2] = snap_corners(tie, 5.0);
  REQUIRE(g2.xs.size() == 2);
  CHECK(g2.xs[0] == doctest::Approx(7.5));
  CHECK(s2[3].x_index == 0);
}

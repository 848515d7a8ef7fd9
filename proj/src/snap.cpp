#include "planvec/snap.hpp"

#include <algorithm>
#include <stdexcept>

namespace planvec {

std::vector<double> snap_axis(std::vector<double> values, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("snap_axis: tol must be > 0");
  if (values.empty()) return {};
  std::sort(values.begin(), values.end());
  std::vector<double> means;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= values.size(); ++i) {
    if (i == values.size() || values[i] - values[i - 1] > tol) {
      double sum = 0.0;
      for (std::size_t j = start; j < i; ++j) sum += values[j];
      means.push_back(sum / static_cast<double>(i - start));
      start = i;
    }
  }
  return means;
}

namespace {

std::size_t nearest_index(const std::vector<double>& grid, double v) {
  auto it = std::lower_bound(grid.begin(), grid.end(), v);
  if (it == grid.begin()) return 0;
  if (it == grid.end()) return grid.size() - 1;
  std::size_t hi = static_cast<std::size_t>(it - grid.begin());
  std::size_t lo = hi - 1;
  // Ties go to the lower line.
  return (v - grid[lo] <= grid[hi] - v) ? lo : hi;
}

}  // namespace

std::pair<AxisGrid, std::vector<SnappedCorner>> snap_corners(
    const std::vector<CornerPoint>& corners, double tol) {
  std::vector<double> xs, ys;
  xs.reserve(corners.size());
  ys.reserve(corners.size());
  for (const CornerPoint& c : corners) {
    xs.push_back(c.x);
    ys.push_back(c.y);
  }
  AxisGrid grid{snap_axis(std::move(xs), tol), snap_axis(std::move(ys), tol)};
  std::vector<SnappedCorner> snapped;
  snapped.reserve(corners.size());
  for (const CornerPoint& c : corners)
    snapped.push_back({nearest_index(grid.xs, c.x), nearest_index(grid.ys, c.y)});
  return {std::move(grid), std::move(snapped)};
}

}  // namespace planvec

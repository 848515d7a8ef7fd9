#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "planvec/corners.hpp"

namespace planvec {

// The axis-aligned line grid corner coordinates are snapped onto.
struct AxisGrid {
  std::vector<double> xs;  // strictly increasing
  std::vector<double> ys;  // strictly increasing
};

struct SnappedCorner {
  std::size_t x_index = 0;  // into AxisGrid::xs
  std::size_t y_index = 0;  // into AxisGrid::ys
};

// Single-linkage 1D clustering: sorted values are split wherever two
// neighbours are more than `tol` apart; each cluster collapses to its mean.
// Returns the strictly increasing cluster means.  tol must be > 0.
std::vector<double> snap_axis(std::vector<double> values, double tol);

// Clusters corner x's and y's independently and maps every corner to its
// nearest grid line on each axis (ties toward the lower line).
std::pair<AxisGrid, std::vector<SnappedCorner>> snap_corners(
    const std::vector<CornerPoint>& corners, double tol);

}  // namespace planvec

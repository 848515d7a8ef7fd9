#pragma once

#include <cstdint>
#include <vector>

#include "planvec/geometry.hpp"
#include "planvec/image.hpp"

namespace planvec {

// Summed-area table over a binary image.  cum(i, j) counts the ink pixels
// in the half-open rectangle [0, i) x [0, j), so any rectangle's ink count
// is four lookups.
class SummedAreaTable {
 public:
  explicit SummedAreaTable(const BinaryImage& binary);

  int width() const { return w_; }
  int height() const { return h_; }

  std::uint32_t cum(int i, int j) const {
    return c_[static_cast<std::size_t>(j) * (w_ + 1) + i];
  }

  // Ink pixels inside [x0, x1) x [y0, y1).  Bounds-checked.
  std::uint32_t rect_ink(int x0, int y0, int x1, int y1) const;
  std::uint32_t rect_ink(const WallRect& r) const {
    return rect_ink(r.x0, r.y0, r.x1, r.y1);
  }

 private:
  int w_ = 0, h_ = 0;
  std::vector<std::uint32_t> c_;  // (w+1) * (h+1), row-major
};

}  // namespace planvec

#include "planvec/sat.hpp"

#include <stdexcept>

#include "planvec/error.hpp"

namespace planvec {

SummedAreaTable::SummedAreaTable(const BinaryImage& binary)
    : w_(binary.width), h_(binary.height) {
  if (w_ <= 0 || h_ <= 0) throw std::invalid_argument("SummedAreaTable: empty image");
  if (static_cast<std::uint64_t>(w_) * h_ > 0xffffffffull)
    throw ConfigError("SummedAreaTable: image too large for 32-bit counts");
  c_.assign(static_cast<std::size_t>(w_ + 1) * (h_ + 1), 0);
  for (int y = 0; y < h_; ++y) {
    const std::uint8_t* row = binary.data.data() + static_cast<std::size_t>(y) * w_;
    std::uint32_t* prev = c_.data() + static_cast<std::size_t>(y) * (w_ + 1);
    std::uint32_t* cur = c_.data() + static_cast<std::size_t>(y + 1) * (w_ + 1);
    std::uint32_t run = 0;
    for (int x = 0; x < w_; ++x) {
      run += row[x];
      cur[x + 1] = prev[x + 1] + run;
    }
  }
}

std::uint32_t SummedAreaTable::rect_ink(int x0, int y0, int x1, int y1) const {
  if (x0 < 0 || y0 < 0 || x1 > w_ || y1 > h_ || x0 > x1 || y0 > y1)
    throw std::invalid_argument("rect_ink: rectangle out of bounds");
  return cum(x1, y1) - cum(x0, y1) - cum(x1, y0) + cum(x0, y0);
}

}  // namespace planvec

#pragma once

#include <cstddef>
#include <vector>

#include "planvec/geometry.hpp"
#include "planvec/sat.hpp"
#include "planvec/snap.hpp"

namespace planvec {

struct FitParams {
  double min_fill = 0.85;  // accept a candidate only at this ink fill ratio
  double min_gain = 0.30;  // ... and only if this share of its ink is new
  int min_thickness = 3;   // short side bounds, pixels
  int max_thickness = 40;
  int min_length = 12;     // long side lower bound, pixels
};

// Hard cap on enumerated candidates; past this the grid is declared too
// dense (the caller should raise the snap tolerance).
inline constexpr std::size_t kMaxCandidates = 2'000'000;

// All axis-aligned rectangles spanned by two grid x-lines and two grid
// y-lines whose short side is a plausible wall thickness and whose long
// side is at least min_length.  Grid lines are rounded to the pixel grid
// (clamped to the image) before pairing.  Throws TooDenseError past
// kMaxCandidates.
std::vector<WallRect> enumerate_candidates(const AxisGrid& grid,
                                           const FitParams& params,
                                           int image_width, int image_height);

// Greedy cover: candidates ordered by (fill desc, area desc, coords asc)
// are accepted when fill >= min_fill and the fraction of their ink pixels
// not yet covered by accepted rectangles is >= min_gain.  Returns accepted
// rectangles in acceptance order, fill ratio recorded on each.
std::vector<WallRect> select_walls(const std::vector<WallRect>& candidates,
                                   const BinaryImage& binary,
                                   const SummedAreaTable& sat,
                                   const FitParams& params);

}  // namespace planvec

#pragma once

#include <vector>

#include "planvec/geometry.hpp"

namespace planvec {

// True when the union of a and b is itself a rectangle: the two agree on
// one axis extent and touch or overlap on the other.
bool mergeable(const WallRect& a, const WallRect& b);

// Drops every rectangle contained in another (closed inclusion; of two
// identical rectangles one survives).  Input order is preserved.
std::vector<WallRect> remove_contained(std::vector<WallRect> walls);

// Repeatedly replaces mergeable pairs by their union until none remain.
// Output is sorted by coordinates.
std::vector<WallRect> merge_rects(std::vector<WallRect> walls);

// remove_contained followed by merge_rects, iterated to a fixed point.
// Preserves the union of covered pixels exactly; the result has no
// contained and no mergeable pair left.
std::vector<WallRect> postprocess(std::vector<WallRect> walls);

VectorPlan postprocess(VectorPlan plan);

}  // namespace planvec

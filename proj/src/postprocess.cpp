#include "planvec/postprocess.hpp"

#include <algorithm>

namespace planvec {

bool mergeable(const WallRect& a, const WallRect& b) {
  const bool same_rows = a.y0 == b.y0 && a.y1 == b.y1;
  const bool same_cols = a.x0 == b.x0 && a.x1 == b.x1;
  if (same_rows && a.x0 <= b.x1 && b.x0 <= a.x1) return true;
  if (same_cols && a.y0 <= b.y1 && b.y0 <= a.y1) return true;
  return false;
}

namespace {

WallRect merged(const WallRect& a, const WallRect& b) {
  WallRect u;
  u.x0 = std::min(a.x0, b.x0);
  u.y0 = std::min(a.y0, b.y0);
  u.x1 = std::max(a.x1, b.x1);
  u.y1 = std::max(a.y1, b.y1);
  u.fill = std::max(a.fill, b.fill);
  return u;
}

}  // namespace

std::vector<WallRect> remove_contained(std::vector<WallRect> walls) {
  std::vector<WallRect> kept;
  kept.reserve(walls.size());
  for (std::size_t i = 0; i < walls.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < walls.size() && !drop; ++j) {
      if (i == j) continue;
      if (!walls[i].inside(walls[j])) continue;
      // Of two identical rectangles, keep only the first.
      drop = !(walls[j] == walls[i]) || j < i;
    }
    if (!drop) kept.push_back(walls[i]);
  }
  return kept;
}

std::vector<WallRect> merge_rects(std::vector<WallRect> walls) {
  std::sort(walls.begin(), walls.end());
  bool again = true;
  while (again) {
    again = false;
    for (std::size_t i = 0; i < walls.size() && !again; ++i)
      for (std::size_t j = i + 1; j < walls.size() && !again; ++j)
        if (mergeable(walls[i], walls[j])) {
          walls[i] = merged(walls[i], walls[j]);
          walls.erase(walls.begin() + static_cast<std::ptrdiff_t>(j));
          std::sort(walls.begin(), walls.end());
          again = true;
        }
  }
  return walls;
}

std::vector<WallRect> postprocess(std::vector<WallRect> walls) {
  while (true) {
    std::vector<WallRect> pruned = remove_contained(walls);
    std::vector<WallRect> merged_list = merge_rects(pruned);
    if (merged_list == walls) return walls;
    walls = std::move(merged_list);
  }
}

VectorPlan postprocess(VectorPlan plan) {
  plan.walls = postprocess(std::move(plan.walls));
  return plan;
}

}  // namespace planvec

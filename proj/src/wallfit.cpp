#include "planvec/wallfit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "planvec/error.hpp"

namespace planvec {

namespace {

void validate(const FitParams& p) {
  if (!(p.min_fill > 0.0 && p.min_fill <= 1.0))
    throw std::invalid_argument("FitParams: min_fill must be in (0, 1]");
  if (!(p.min_gain >= 0.0 && p.min_gain <= 1.0))
    throw std::invalid_argument("FitParams: min_gain must be in [0, 1]");
  if (p.min_thickness < 1 || p.max_thickness < p.min_thickness)
    throw std::invalid_argument("FitParams: bad thickness bounds");
  if (p.min_length < 1)
    throw std::invalid_argument("FitParams: min_length must be >= 1");
}

// Grid lines live in continuous coordinates; pixel rectangles need ints.
std::vector<int> to_pixel_lines(const std::vector<double>& lines, int limit) {
  std::vector<int> px;
  px.reserve(lines.size());
  for (double v : lines) {
    int p = static_cast<int>(std::lround(v));
    px.push_back(std::clamp(p, 0, limit));
  }
  px.erase(std::unique(px.begin(), px.end()), px.end());
  return px;
}

}  // namespace

std::vector<WallRect> enumerate_candidates(const AxisGrid& grid,
                                           const FitParams& params,
                                           int image_width, int image_height) {
  validate(params);
  if (image_width <= 0 || image_height <= 0)
    throw std::invalid_argument("enumerate_candidates: empty image bounds");
  const std::vector<int> xs = to_pixel_lines(grid.xs, image_width);
  const std::vector<int> ys = to_pixel_lines(grid.ys, image_height);

  // Loop nest emits candidates already ordered lexicographically by
  // (x0, y0, x1, y1).
  std::vector<WallRect> out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = 0; k < ys.size(); ++k)
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        const int w = xs[j] - xs[i];
        for (std::size_t l = k + 1; l < ys.size(); ++l) {
          const int h = ys[l] - ys[k];
          const int thick = std::min(w, h);
          const int length = std::max(w, h);
          if (thick < params.min_thickness || thick > params.max_thickness)
            continue;
          if (length < params.min_length) continue;
          out.push_back({xs[i], ys[k], xs[j], ys[l]});
          if (out.size() > kMaxCandidates)
            throw TooDenseError(
                "enumerate_candidates: grid too dense (over " +
                std::to_string(kMaxCandidates) +
                " candidates); raise the snap tolerance");
        }
      }
  return out;
}

std::vector<WallRect> select_walls(const std::vector<WallRect>& candidates,
                                   const BinaryImage& binary,
                                   const SummedAreaTable& sat,
                                   const FitParams& params) {
  validate(params);
  if (binary.width != sat.width() || binary.height != sat.height())
    throw std::invalid_argument("select_walls: image and table disagree");

  struct Scored {
    WallRect rect;
    std::uint32_t ink;
    double fill;
  };
  std::vector<Scored> scored;
  scored.reserve(candidates.size());
  for (const WallRect& r : candidates) {
    std::uint32_t ink = sat.rect_ink(r);
    double fill = static_cast<double>(ink) / static_cast<double>(r.area());
    if (fill >= params.min_fill) scored.push_back({r, ink, fill});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.fill != b.fill) return a.fill > b.fill;
    if (a.rect.area() != b.rect.area()) return a.rect.area() > b.rect.area();
    return a.rect < b.rect;
  });
  // Identical grid-line pairs can surface the same rectangle twice; with
  // min_gain = 0 a duplicate would be accepted again, so drop exact repeats
  // (they sort adjacently).
  scored.erase(std::unique(scored.begin(), scored.end(),
                           [](const Scored& a, const Scored& b) {
                             return a.rect == b.rect;
                           }),
               scored.end());

  // covered[i] = 1 once an accepted rectangle claimed this *ink* pixel.
  std::vector<std::uint8_t> covered(binary.pixel_count(), 0);
  const int w = binary.width;
  std::vector<WallRect> accepted;
  for (const Scored& s : scored) {
    std::uint32_t already = 0;
    for (int y = s.rect.y0; y < s.rect.y1; ++y) {
      const std::uint8_t* row = covered.data() + static_cast<std::size_t>(y) * w;
      for (int x = s.rect.x0; x < s.rect.x1; ++x) already += row[x];
    }
    const double fresh = static_cast<double>(s.ink - already);
    if (fresh < params.min_gain * static_cast<double>(s.ink)) continue;
    WallRect r = s.rect;
    r.fill = s.fill;
    accepted.push_back(r);
    for (int y = r.y0; y < r.y1; ++y) {
      const std::uint8_t* inkrow = binary.data.data() + static_cast<std::size_t>(y) * w;
      std::uint8_t* covrow = covered.data() + static_cast<std::size_t>(y) * w;
      for (int x = r.x0; x < r.x1; ++x)
        if (inkrow[x]) covrow[x] = 1;
    }
  }
  return accepted;
}

}  // namespace planvec

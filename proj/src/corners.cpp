#include "planvec/corners.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "planvec/error.hpp"
#include "planvec/kernels.hpp"

namespace planvec {

double min_eigenvalue(double a, double b, double c) {
  double half_diff = (a - c) * 0.5;
  double disc = half_diff * half_diff + b * b;
  return (a + c) * 0.5 - std::sqrt(disc);
}

namespace {

// Sliding horizontal window sum of radius r; positions whose window sticks
// out of the row are left at zero, matching the zero-response margin.
void horizontal_box_sums(const std::int32_t* src, std::int32_t* dst, int w,
                         int h, int r) {
  for (int y = 0; y < h; ++y) {
    const std::int32_t* row = src + static_cast<std::size_t>(y) * w;
    std::int32_t* out = dst + static_cast<std::size_t>(y) * w;
    std::fill(out, out + w, 0);
    if (w < 2 * r + 1) continue;
    std::int32_t acc = 0;
    for (int x = 0; x <= 2 * r; ++x) acc += row[x];
    out[r] = acc;
    for (int x = r + 1; x <= w - 1 - r; ++x) {
      acc += row[x + r] - row[x - r - 1];
      out[x] = acc;
    }
  }
}

// Vertical pass over the horizontally-summed rows, again full windows only.
void vertical_box_sums(const std::int32_t* src, std::int32_t* dst, int w,
                       int h, int r) {
  std::fill(dst, dst + static_cast<std::size_t>(w) * h, 0);
  if (h < 2 * r + 1) return;
  std::vector<std::int32_t> acc(src, src + w);
  std::vector<std::int32_t> zero(w, 0);
  for (int y = 1; y <= 2 * r; ++y)
    kernels::add_sub_rows_i32(acc.data(), src + static_cast<std::size_t>(y) * w,
                              zero.data(), w);
  for (int y = r;; ++y) {
    std::copy(acc.begin(), acc.end(), dst + static_cast<std::size_t>(y) * w);
    if (y == h - 1 - r) break;
    kernels::add_sub_rows_i32(acc.data(),
                              src + static_cast<std::size_t>(y + r + 1) * w,
                              src + static_cast<std::size_t>(y - r) * w, w);
  }
}

}  // namespace

std::vector<CornerPoint> detect_corners(const RasterImage& gray,
                                        const CornerParams& params) {
  if (gray.channels != 1)
    throw std::invalid_argument("detect_corners: expected a single-channel image");
  if (!(params.quality_level > 0.0 && params.quality_level <= 1.0))
    throw std::invalid_argument("detect_corners: quality_level must be in (0, 1]");
  if (params.min_distance < 1.0)
    throw std::invalid_argument("detect_corners: min_distance must be >= 1");
  if (params.window_radius < 1 || params.window_radius > 15)
    throw std::invalid_argument("detect_corners: window_radius must be in [1, 15]");
  if (params.max_corners < 0)
    throw std::invalid_argument("detect_corners: max_corners must be >= 0");
  const int w = gray.width, h = gray.height, r = params.window_radius;
  // One full window plus a gradient pixel on each side of it.
  if (w < 2 * r + 3 || h < 2 * r + 3)
    throw TooSmallError("detect_corners: image too small for the window");

  const std::size_t n = gray.pixel_count();
  std::vector<std::int16_t> gx(n), gy(n);
  kernels::sobel_u8(gray.data.data(), w, h, gx.data(), gy.data());

  std::vector<std::int32_t> ixx(n), ixy(n), iyy(n);
  kernels::gradient_products(gx.data(), gy.data(), ixx.data(), ixy.data(),
                             iyy.data(), n);

  // Window sums: |g| <= 1020 so each product is <= 1020^2 and a full
  // (2r+1)^2 window with r <= 15 stays under 2^31.
  std::vector<std::int32_t> tmp(n), sxx(n), sxy(n), syy(n);
  horizontal_box_sums(ixx.data(), tmp.data(), w, h, r);
  vertical_box_sums(tmp.data(), sxx.data(), w, h, r);
  horizontal_box_sums(ixy.data(), tmp.data(), w, h, r);
  vertical_box_sums(tmp.data(), sxy.data(), w, h, r);
  horizontal_box_sums(iyy.data(), tmp.data(), w, h, r);
  vertical_box_sums(tmp.data(), syy.data(), w, h, r);

  std::vector<double> resp(n);
  kernels::corner_response_map(sxx.data(), sxy.data(), syy.data(), resp.data(), n);

  double max_resp = 0.0;
  for (double v : resp) max_resp = std::max(max_resp, v);
  if (max_resp <= 0.0) return {};

  const double threshold = params.quality_level * max_resp;
  struct Candidate {
    int x, y;
    double response;
  };
  std::vector<Candidate> cands;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double v = resp[static_cast<std::size_t>(y) * w + x];
      if (v >= threshold) cands.push_back({x, y, v});
    }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.response != b.response) return a.response > b.response;
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });

  const double min_d2 = params.min_distance * params.min_distance;
  std::vector<CornerPoint> kept;
  for (const Candidate& c : cands) {
    bool ok = true;
    for (const CornerPoint& k : kept) {
      double dx = c.x - k.x, dy = c.y - k.y;
      if (dx * dx + dy * dy < min_d2) {
        ok = false;
        break;
      }
    }
    if (ok) {
      kept.push_back({static_cast<double>(c.x), static_cast<double>(c.y), c.response});
      if (params.max_corners > 0 &&
          kept.size() == static_cast<std::size_t>(params.max_corners))
        break;
    }
  }
  return kept;
}

}  // namespace planvec

#pragma once

#include <vector>

#include "planvec/image.hpp"

namespace planvec {

struct CornerParams {
  // Keep a peak when its response is at least quality_level * max response.
  double quality_level = 0.05;
  // Minimum Euclidean distance between two surviving peaks, in pixels.
  double min_distance = 8.0;
  // Structure tensor is summed over a (2r+1) x (2r+1) window.
  int window_radius = 2;
  // 0 = unlimited; otherwise keep the strongest N after suppression.
  int max_corners = 0;
};

struct CornerPoint {
  double x = 0.0;
  double y = 0.0;
  double response = 0.0;
};

// Smaller eigenvalue of the symmetric 2x2 matrix [a b; b c].
double min_eigenvalue(double a, double b, double c);

// Corner peaks of a single-channel image: Sobel gradients (edge-replicated),
// box-window structure tensor, min-eigenvalue response, threshold at
// quality_level * max, then greedy non-maximum suppression strongest-first
// (ties broken by row, then column).  Pixels whose window leaves the image
// carry zero response.  Returns pixel-grid positions ordered strongest-first.
// Throws TooSmallError when the image cannot hold one full window.
std::vector<CornerPoint> detect_corners(const RasterImage& gray,
                                        const CornerParams& params);

}  // namespace planvec

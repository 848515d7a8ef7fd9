#pragma once

#include <cstdint>
#include <vector>

#include "planvec/geometry.hpp"
#include "planvec/image.hpp"

namespace planvec {

// splitmix64: tiny, portable, identical streams on every platform — the
// reproducibility guarantee rests on it.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // Uniform in [0, n), unbiased (rejection sampling).
  std::uint64_t below(std::uint64_t n);
  // Uniform in [lo, hi], both ends included.
  int range(int lo, int hi);
};

struct SynthConfig {
  int canvas = 512;
  int wall_thickness = 8;
  int door_gap = 24;
  int rooms_min = 3;
  int rooms_max = 6;
};

struct GroundTruthPlan {
  std::uint64_t seed = 0;
  int canvas = 0;
  int rooms = 0;
  std::vector<WallRect> walls;
};

// Recursive rectangular partition: an outer frame inset from the canvas
// border, then the largest room is repeatedly split by a wall with a door
// gap until the drawn room count is reached.  Wall lines are kept far
// enough apart (3x thickness) that every wall is recoverable and the wall
// set is its own postprocessing fixed point.  Throws ConfigError when the
// canvas cannot fit rooms_min rooms.
GroundTruthPlan generate_plan(std::uint64_t seed, const SynthConfig& config);

// Paints the walls onto an empty canvas.
BinaryImage rasterize(const GroundTruthPlan& plan);

struct NoiseConfig {
  double speckle_rate = 0.0;  // per-background-pixel dark speck probability
  int edge_jitter = 0;        // flip radius around ink/background boundaries
  int gray_level = 255;       // background intensity
};

// Dark speck intensity; kept below the default binarization threshold so
// specks survive thresholding (that is what makes them noise).
inline constexpr std::uint8_t kSpeckleValue = 96;

// Grayscale render with synthetic scanning artifacts, in order: background
// lifted to gray_level, boundary pixels within Chebyshev distance
// edge_jitter of the opposite class flipped with probability 1/2, then
// specks dropped on background-colored pixels.  One splitmix64 stream,
// row-major, so a (seed, config) pair always yields the same image.
RasterImage add_noise(const BinaryImage& binary, std::uint64_t seed,
                      const NoiseConfig& config);

// Intersection-over-union of two wall rectangles.
double rect_iou(const WallRect& a, const WallRect& b);

struct MatchPair {
  std::size_t pred_index = 0;
  std::size_t truth_index = 0;
  double iou = 0.0;
};

struct MatchReport {
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;
  std::size_t path_count_pred = 0;
  std::size_t path_count_truth = 0;
  std::vector<MatchPair> matches;
};

// Greedy one-to-one matching by descending IoU (ties broken by indices);
// pairs below `iou_threshold` never match.  Empty sides count as perfect
// (no predictions asked for, none missed).
MatchReport match_walls(const std::vector<WallRect>& pred,
                        const std::vector<WallRect>& truth,
                        double iou_threshold);

}  // namespace planvec

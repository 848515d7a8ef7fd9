#include "planvec/synth.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <tuple>

#include "planvec/error.hpp"

namespace planvec {

std::uint64_t SplitMix64::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("SplitMix64::below: n must be > 0");
  std::uint64_t x, r;
  do {
    x = next();
    r = x % n;
  } while (x - r > std::uint64_t(-1) - (n - 1));
  return r;
}

int SplitMix64::range(int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("SplitMix64::range: empty range");
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi) - lo + 1));
}

namespace {

struct Room {
  int x0, y0, x1, y1;  // free interior space, half-open

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  long long area() const { return static_cast<long long>(width()) * height(); }
};

struct Generator {
  SplitMix64 rng;
  const SynthConfig& cfg;
  const int t;          // wall thickness
  const int gap;        // door gap
  const int min_piece;  // smallest room side a split may leave
  std::vector<WallRect> walls;
  std::vector<int> x_lines, y_lines;  // low coordinates of vertical/horizontal walls

  Generator(std::uint64_t seed, const SynthConfig& config)
      : rng(seed), cfg(config), t(config.wall_thickness), gap(config.door_gap),
        min_piece(4 * config.wall_thickness) {}

  // Walls closer than 3t would land their grid lines within the vectorizer's
  // snap tolerance of each other; keep split lines well separated.
  bool line_ok(const std::vector<int>& lines, int c) const {
    for (int line : lines)
      if (std::abs(line - c) < 3 * t) return false;
    return true;
  }

  bool can_split_x(const Room& r) const {
    return r.width() >= 2 * min_piece + t && r.height() >= gap + 8 * t;
  }
  bool can_split_y(const Room& r) const {
    return r.height() >= 2 * min_piece + t && r.width() >= gap + 8 * t;
  }

  // Emits the 1-2 wall segments of a partition running across [a, b) with a
  // door gap; segments shorter than 4t are never produced.
  void emit_wall_segments(bool vertical, int c, int a, int b) {
    int lo = a + 4 * t, hi = b - gap - 4 * t;
    int gs;
    if (lo <= hi) {
      gs = rng.range(lo, hi);
    } else {
      gs = rng.next() & 1 ? a : b - gap;  // gap flush at one end
    }
    auto emit = [&](int s0, int s1) {
      if (s1 - s0 <= 0) return;
      if (vertical)
        walls.push_back({c, s0, c + t, s1});
      else
        walls.push_back({s0, c, s1, c + t});
    };
    emit(a, gs);
    emit(gs + gap, b);
  }

  // Splits `room` in two, returns the halves; false when no admissible
  // split line exists.
  bool split(const Room& room, Room& first, Room& second) {
    bool try_x_first = room.width() >= room.height();
    for (int attempt = 0; attempt < 2; ++attempt) {
      bool vertical = try_x_first == (attempt == 0);
      if (vertical ? can_split_x(room) : can_split_y(room)) {
        const int lo = (vertical ? room.x0 : room.y0) + min_piece;
        const int hi = (vertical ? room.x1 : room.y1) - t - min_piece;
        const std::vector<int>& used = vertical ? x_lines : y_lines;
        for (int draw = 0; draw < 32; ++draw) {
          int c = rng.range(lo, hi);
          if (!line_ok(used, c)) continue;
          if (vertical) {
            emit_wall_segments(true, c, room.y0, room.y1);
            x_lines.push_back(c);
            first = {room.x0, room.y0, c, room.y1};
            second = {c + t, room.y0, room.x1, room.y1};
          } else {
            emit_wall_segments(false, c, room.x0, room.x1);
            y_lines.push_back(c);
            first = {room.x0, room.y0, room.x1, c};
            second = {room.x0, c + t, room.x1, room.y1};
          }
          return true;
        }
      }
    }
    return false;
  }
};

}  // namespace

GroundTruthPlan generate_plan(std::uint64_t seed, const SynthConfig& config) {
  if (config.canvas < 64) throw ConfigError("generate_plan: canvas must be >= 64");
  if (config.wall_thickness < 2) throw ConfigError("generate_plan: wall thickness must be >= 2");
  if (config.door_gap < 2) throw ConfigError("generate_plan: door gap must be >= 2");
  if (config.rooms_min < 1 || config.rooms_max < config.rooms_min)
    throw ConfigError("generate_plan: bad rooms range");

  const int S = config.canvas;
  const int margin = S / 16;
  const int t = config.wall_thickness;
  const Room interior{margin + t, margin + t, S - margin - t, S - margin - t};
  if (interior.width() < 3 * t || interior.height() < 3 * t)
    throw ConfigError("generate_plan: walls do not fit the canvas");

  Generator gen(seed, config);
  gen.walls.push_back({margin, margin, S - margin, margin + t});          // top
  gen.walls.push_back({margin, S - margin - t, S - margin, S - margin});  // bottom
  gen.walls.push_back({margin, margin + t, margin + t, S - margin - t});  // left
  gen.walls.push_back({S - margin - t, margin + t, S - margin, S - margin - t});  // right
  gen.x_lines = {margin, S - margin - t};
  gen.y_lines = {margin, S - margin - t};

  const int target_rooms = gen.rng.range(config.rooms_min, config.rooms_max);
  std::vector<Room> rooms{interior};
  std::vector<Room> stuck;  // rooms no split currently fits
  while (static_cast<int>(rooms.size() + stuck.size()) < target_rooms && !rooms.empty()) {
    auto best = std::max_element(
        rooms.begin(), rooms.end(), [](const Room& a, const Room& b) {
          if (a.area() != b.area()) return a.area() < b.area();
          return std::tie(b.x0, b.y0, b.x1, b.y1) < std::tie(a.x0, a.y0, a.x1, a.y1);
        });
    Room room = *best;
    rooms.erase(best);
    Room first{}, second{};
    if (gen.split(room, first, second)) {
      rooms.push_back(first);
      rooms.push_back(second);
    } else {
      stuck.push_back(room);
    }
  }

  const int achieved = static_cast<int>(rooms.size() + stuck.size());
  if (achieved < config.rooms_min)
    throw ConfigError("generate_plan: rooms do not fit the canvas");

  GroundTruthPlan plan;
  plan.seed = seed;
  plan.canvas = S;
  plan.rooms = achieved;
  plan.walls = std::move(gen.walls);
  return plan;
}

BinaryImage rasterize(const GroundTruthPlan& plan) {
  if (plan.canvas <= 0) throw std::invalid_argument("rasterize: empty canvas");
  BinaryImage img = BinaryImage::make(plan.canvas, plan.canvas);
  for (const WallRect& r : plan.walls) {
    if (r.x0 < 0 || r.y0 < 0 || r.x1 > plan.canvas || r.y1 > plan.canvas ||
        r.x0 >= r.x1 || r.y0 >= r.y1)
      throw std::invalid_argument("rasterize: wall outside the canvas");
    for (int y = r.y0; y < r.y1; ++y)
      std::fill(img.data.begin() + static_cast<std::size_t>(y) * plan.canvas + r.x0,
                img.data.begin() + static_cast<std::size_t>(y) * plan.canvas + r.x1,
                std::uint8_t(1));
  }
  return img;
}

RasterImage add_noise(const BinaryImage& binary, std::uint64_t seed,
                      const NoiseConfig& config) {
  if (!(config.speckle_rate >= 0.0 && config.speckle_rate <= 1.0))
    throw std::invalid_argument("add_noise: speckle_rate must be in [0, 1]");
  if (config.edge_jitter < 0 || config.edge_jitter > 8)
    throw std::invalid_argument("add_noise: edge_jitter must be in [0, 8]");
  if (config.gray_level < 0 || config.gray_level > 255)
    throw std::invalid_argument("add_noise: gray_level must be in [0, 255]");

  const int w = binary.width, h = binary.height, j = config.edge_jitter;
  const std::uint8_t bg = static_cast<std::uint8_t>(config.gray_level);
  RasterImage out = RasterImage::make(w, h, 1);
  for (std::size_t i = 0; i < binary.pixel_count(); ++i)
    out.data[i] = binary.data[i] ? 0 : bg;

  SplitMix64 rng(seed);

  if (j > 0) {
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const bool ink = binary.ink(x, y);
        bool boundary = false;
        for (int dy = -j; dy <= j && !boundary; ++dy)
          for (int dx = -j; dx <= j && !boundary; ++dx) {
            int nx = x + dx, ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            if (binary.ink(nx, ny) != ink) boundary = true;
          }
        if (boundary && rng.next_double() < 0.5)
          out.at(x, y) = ink ? bg : 0;
      }
  }

  if (config.speckle_rate > 0.0) {
    for (std::size_t i = 0; i < out.data.size(); ++i)
      if (out.data[i] == bg && rng.next_double() < config.speckle_rate)
        out.data[i] = kSpeckleValue;
  }
  return out;
}

double rect_iou(const WallRect& a, const WallRect& b) {
  const long long ix = std::max(0, std::min(a.x1, b.x1) - std::max(a.x0, b.x0));
  const long long iy = std::max(0, std::min(a.y1, b.y1) - std::max(a.y0, b.y0));
  const long long inter = ix * iy;
  const long long uni = a.area() + b.area() - inter;
  if (uni <= 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

MatchReport match_walls(const std::vector<WallRect>& pred,
                        const std::vector<WallRect>& truth,
                        double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0))
    throw std::invalid_argument("match_walls: iou_threshold must be in (0, 1]");
  std::vector<MatchPair> pairs;
  for (std::size_t i = 0; i < pred.size(); ++i)
    for (std::size_t j = 0; j < truth.size(); ++j) {
      double iou = rect_iou(pred[i], truth[j]);
      if (iou >= iou_threshold) pairs.push_back({i, j, iou});
    }
  std::sort(pairs.begin(), pairs.end(), [](const MatchPair& a, const MatchPair& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    if (a.pred_index != b.pred_index) return a.pred_index < b.pred_index;
    return a.truth_index < b.truth_index;
  });

  std::vector<char> pred_used(pred.size(), 0), truth_used(truth.size(), 0);
  MatchReport report;
  report.path_count_pred = pred.size();
  report.path_count_truth = truth.size();
  for (const MatchPair& p : pairs) {
    if (pred_used[p.pred_index] || truth_used[p.truth_index]) continue;
    pred_used[p.pred_index] = truth_used[p.truth_index] = 1;
    report.matches.push_back(p);
  }
  const double m = static_cast<double>(report.matches.size());
  report.precision = pred.empty() ? 1.0 : m / static_cast<double>(pred.size());
  report.recall = truth.empty() ? 1.0 : m / static_cast<double>(truth.size());
  report.f1 = (report.precision + report.recall) > 0.0
                  ? 2.0 * report.precision * report.recall /
                        (report.precision + report.recall)
                  : 0.0;
  return report;
}

}  // namespace planvec

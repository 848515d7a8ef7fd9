#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "planvec/error.hpp"
#include "planvec/guidance.hpp"
#include "planvec/image_io.hpp"
#include "planvec/pipeline.hpp"
#include "planvec/postprocess.hpp"
#include "planvec/svg.hpp"
#include "planvec/synth.hpp"

using planvec::ConfigError;
using planvec::FormatError;
using planvec::NumericError;
using planvec::TooDenseError;
using ordered_json = nlohmann::ordered_json;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(path + ": cannot open for writing");
  out << text;
  if (!out) throw FormatError(path + ": write failed");
}

// Machine output goes to `-o` when given, stdout otherwise.
void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
  } else {
    write_text(out_path, text);
  }
}

struct VectorizeFlags {
  std::string input, output, debug_corners;
  int threshold = 128;
  double quality = 0.05;
  double min_distance = 0.0;
  int window_radius = 2;
  int max_corners = 0;
  double snap_tol = 0.0;
  double min_fill = 0.85;
  double min_gain = 0.30;
  int min_thickness = 0;
  int max_thickness = 0;
  int min_length = 0;
  bool no_postprocess = false;
  bool grayscale_corners = false;
};

struct SynthFlags {
  std::uint64_t seed = 1;
  int canvas = 512;
  int thickness = 8;
  int door_gap = 24;
  int rooms_min = 3;
  int rooms_max = 6;
  double speckle = 0.0;
  int jitter = 0;
  int gray = 255;
  std::string raster, truth;
};

struct BenchFlags {
  std::uint64_t seed_start = 1;
  int runs = 10;
  double iou = 0.7;
  std::string output;
  SynthFlags synth;  // seed field unused; canvas/noise shared
};

struct GuidanceFlags {
  int size = 16;
  int steps = 20;
  double scale = 0.25;
  double alpha_bar = 0.5;
  double init = 0.0;
  std::string mask_path;
  std::string output;
};

planvec::PipelineParams resolve_params(const CLI::App* cmd,
                                       const VectorizeFlags& f, int width) {
  planvec::PipelineParams p = planvec::default_params(width);
  p.threshold = f.threshold;
  p.corners.quality_level = f.quality;
  p.corners.window_radius = f.window_radius;
  p.corners.max_corners = f.max_corners;
  if (cmd->count("--min-distance")) p.corners.min_distance = f.min_distance;
  if (cmd->count("--snap-tol")) p.snap_tolerance = f.snap_tol;
  p.fit.min_fill = f.min_fill;
  p.fit.min_gain = f.min_gain;
  if (cmd->count("--min-thickness")) p.fit.min_thickness = f.min_thickness;
  if (cmd->count("--max-thickness")) p.fit.max_thickness = f.max_thickness;
  if (cmd->count("--min-length")) p.fit.min_length = f.min_length;
  p.run_postprocess = !f.no_postprocess;
  p.corners_on_grayscale = f.grayscale_corners;
  return p;
}

void add_pipeline_flags(CLI::App* cmd, VectorizeFlags& f) {
  cmd->add_option("--threshold", f.threshold,
                  "Ink threshold: intensity < threshold is wall (default 128)");
  cmd->add_option("--quality", f.quality,
                  "Corner quality floor as a fraction of the max response (default 0.05)");
  cmd->add_option("--min-distance", f.min_distance,
                  "Minimum corner separation in px (default 8 at 1024, scaled)");
  cmd->add_option("--window-radius", f.window_radius,
                  "Structure-tensor window radius (default 2)");
  cmd->add_option("--max-corners", f.max_corners,
                  "Keep at most N corners, 0 = unlimited (default 0)");
  cmd->add_option("--snap-tol", f.snap_tol,
                  "Axis snap tolerance in px (default 6 at 1024, scaled)");
  cmd->add_option("--min-fill", f.min_fill,
                  "Minimum ink fill ratio of a wall rectangle (default 0.85)");
  cmd->add_option("--min-gain", f.min_gain,
                  "Minimum fraction of newly covered ink (default 0.30)");
  cmd->add_option("--min-thickness", f.min_thickness,
                  "Minimum wall thickness in px (default 3 at 1024, scaled)");
  cmd->add_option("--max-thickness", f.max_thickness,
                  "Maximum wall thickness in px (default 40 at 1024, scaled)");
  cmd->add_option("--min-length", f.min_length,
                  "Minimum wall length in px (default 12 at 1024, scaled)");
  cmd->add_flag("--no-postprocess", f.no_postprocess,
                "Skip containment removal and rectangle merging");
  cmd->add_flag("--grayscale-corners", f.grayscale_corners,
                "Detect corners on the grayscale image instead of the thresholded one");
}

void add_noise_flags(CLI::App* cmd, SynthFlags& f) {
  cmd->add_option("--speckle", f.speckle, "Speckle rate on background pixels (default 0)");
  cmd->add_option("--jitter", f.jitter, "Edge jitter radius in px (default 0)");
  cmd->add_option("--gray", f.gray, "Background gray level (default 255)");
}

void add_generator_flags(CLI::App* cmd, SynthFlags& f) {
  cmd->add_option("--canvas", f.canvas, "Canvas size in px (default 512)");
  cmd->add_option("--thickness", f.thickness, "Wall thickness in px (default 8)");
  cmd->add_option("--door-gap", f.door_gap, "Door gap length in px (default 24)");
  cmd->add_option("--rooms-min", f.rooms_min, "Minimum room count (default 3)");
  cmd->add_option("--rooms-max", f.rooms_max, "Maximum room count (default 6)");
}

int cmd_vectorize(const CLI::App* cmd, const VectorizeFlags& f) {
  const planvec::RasterImage input = planvec::load_image(f.input);
  const planvec::PipelineParams params = resolve_params(cmd, f, input.width);

  const auto start = std::chrono::steady_clock::now();
  const planvec::VectorizeResult result = planvec::vectorize_image(input, params);
  const double elapsed = seconds_since(start);

  emit(f.output, planvec::to_svg(result.plan));

  if (!f.debug_corners.empty()) {
    std::string csv = "x,y,response\n";
    char line[96];
    for (const planvec::CornerPoint& c : result.corners) {
      std::snprintf(line, sizeof line, "%g,%g,%.17g\n", c.x, c.y, c.response);
      csv += line;
    }
    write_text(f.debug_corners, csv);
  }

  if (result.plan.walls.empty())
    std::cerr << "warning: no walls found in " << f.input << "\n";
  ordered_json summary;
  summary["paths"] = result.plan.walls.size();
  summary["elapsed_seconds"] = elapsed;
  summary["image_size"] = {input.width, input.height};
  std::cerr << summary.dump() << "\n";
  return 0;
}

int cmd_synth(const SynthFlags& f, bool json_summary) {
  planvec::SynthConfig cfg;
  cfg.canvas = f.canvas;
  cfg.wall_thickness = f.thickness;
  cfg.door_gap = f.door_gap;
  cfg.rooms_min = f.rooms_min;
  cfg.rooms_max = f.rooms_max;
  const planvec::GroundTruthPlan plan = planvec::generate_plan(f.seed, cfg);
  const planvec::BinaryImage ink = planvec::rasterize(plan);

  planvec::NoiseConfig noise;
  noise.speckle_rate = f.speckle;
  noise.edge_jitter = f.jitter;
  noise.gray_level = f.gray;
  const planvec::RasterImage raster = planvec::add_noise(ink, f.seed, noise);

  planvec::save_image(raster, f.raster);
  if (!f.truth.empty()) {
    planvec::VectorPlan truth{plan.canvas, plan.canvas, plan.walls};
    write_text(f.truth, planvec::to_svg(truth));
  }

  if (json_summary) {
    ordered_json summary;
    summary["seed"] = f.seed;
    summary["rooms"] = plan.rooms;
    summary["walls"] = plan.walls.size();
    summary["raster"] = f.raster;
    std::cerr << summary.dump() << "\n";
  } else {
    std::cerr << "seed " << f.seed << ": " << plan.rooms << " rooms, "
              << plan.walls.size() << " walls -> " << f.raster << "\n";
  }
  return 0;
}

int cmd_bench(const CLI::App* cmd, const BenchFlags& f,
              const VectorizeFlags& pipeline_flags, bool json_summary) {
  planvec::SynthConfig cfg;
  cfg.canvas = f.synth.canvas;
  cfg.wall_thickness = f.synth.thickness;
  cfg.door_gap = f.synth.door_gap;
  cfg.rooms_min = f.synth.rooms_min;
  cfg.rooms_max = f.synth.rooms_max;
  planvec::NoiseConfig noise;
  noise.speckle_rate = f.synth.speckle;
  noise.edge_jitter = f.synth.jitter;
  noise.gray_level = f.synth.gray;

  ordered_json params;
  params["canvas"] = cfg.canvas;
  params["thickness"] = cfg.wall_thickness;
  params["door_gap"] = cfg.door_gap;
  params["rooms_min"] = cfg.rooms_min;
  params["rooms_max"] = cfg.rooms_max;
  params["speckle"] = noise.speckle_rate;
  params["jitter"] = noise.edge_jitter;
  params["gray"] = noise.gray_level;
  params["iou"] = f.iou;

  std::string lines;
  for (int i = 0; i < f.runs; ++i) {
    const std::uint64_t seed = f.seed_start + static_cast<std::uint64_t>(i);
    const planvec::GroundTruthPlan truth = planvec::generate_plan(seed, cfg);
    const planvec::BinaryImage ink = planvec::rasterize(truth);
    const planvec::RasterImage raster = planvec::add_noise(ink, seed, noise);
    const planvec::PipelineParams pp =
        resolve_params(cmd, pipeline_flags, raster.width);

    const auto start = std::chrono::steady_clock::now();
    const planvec::VectorizeResult result = planvec::vectorize_image(raster, pp);
    const double elapsed = seconds_since(start);

    const planvec::MatchReport report =
        planvec::match_walls(result.plan.walls, truth.walls, f.iou);

    ordered_json row;
    row["seed"] = seed;
    row["precision"] = report.precision;
    row["recall"] = report.recall;
    row["f1"] = report.f1;
    row["path_count_pred"] = report.path_count_pred;
    row["path_count_truth"] = report.path_count_truth;
    row["elapsed_seconds"] = elapsed;
    row["params"] = params;
    lines += row.dump();
    lines += "\n";
  }
  emit(f.output, lines);
  if (json_summary)
    std::cerr << ordered_json{{"runs", f.runs}}.dump() << "\n";
  else
    std::cerr << "completed " << f.runs << " bench runs\n";
  return 0;
}

int cmd_guidance_demo(const GuidanceFlags& f) {
  if (f.size < 1) throw ConfigError("guidance-demo: size must be >= 1");
  planvec::PixelMask mask;
  if (f.mask_path.empty()) {
    mask = planvec::PixelMask::make(f.size, f.size, 1);
  } else {
    const planvec::RasterImage img =
        planvec::to_grayscale(planvec::load_image(f.mask_path));
    mask = planvec::PixelMask::make(img.width, img.height, 0);
    for (std::size_t i = 0; i < img.data.size(); ++i)
      mask.data[i] = img.data[i] != 0 ? 1 : 0;
  }

  planvec::Tensor initial = planvec::Tensor::full(
      {static_cast<std::size_t>(mask.height), static_cast<std::size_t>(mask.width)},
      f.init);
  const std::vector<double> trajectory =
      planvec::guided_descent_demo(std::move(initial), mask, f.scale,
                                   f.alpha_bar, f.steps);

  std::string csv = "step,masked_mean\n";
  char line[64];
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    std::snprintf(line, sizeof line, "%zu,%.17g\n", k + 1, trajectory[k]);
    csv += line;
  }
  emit(f.output, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"planvec: floor-plan raster to structured SVG, plus a synthetic benchmark harness"};
  app.require_subcommand(1);

  bool json_summary = false;
  std::uint64_t global_seed = 0;
  app.add_flag("--json", json_summary, "Emit JSON stderr summaries");
  auto* seed_opt = app.add_option("--seed", global_seed,
                                  "Default seed for synth/bench subcommands");

  VectorizeFlags vf;
  CLI::App* vec = app.add_subcommand("vectorize", "Convert a raster plan to SVG");
  vec->add_option("input", vf.input, "Input image (PNG/PGM/PPM)")->required();
  vec->add_option("-o,--output", vf.output, "Output SVG path (default stdout)");
  vec->add_option("--debug-corners", vf.debug_corners,
                  "Also dump detected corners as CSV to this path");
  add_pipeline_flags(vec, vf);

  SynthFlags sf;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic plan raster + truth SVG");
  synth->add_option("--seed", sf.seed, "Generator seed (default 1)");
  synth->add_option("--raster", sf.raster, "Raster output path (.png/.pgm)")->required();
  synth->add_option("--truth", sf.truth, "Ground-truth SVG output path");
  add_generator_flags(synth, sf);
  add_noise_flags(synth, sf);

  BenchFlags bf;
  VectorizeFlags bpf;  // pipeline overrides for bench runs
  CLI::App* bench = app.add_subcommand("bench", "Run synth -> vectorize -> match over a seed range");
  bench->add_option("--seed-start", bf.seed_start, "First seed (default 1)");
  bench->add_option("--runs", bf.runs, "Number of seeds (default 10)");
  bench->add_option("--iou", bf.iou, "IoU threshold for matching (default 0.7)");
  bench->add_option("-o,--output", bf.output, "JSONL output path (default stdout)");
  add_generator_flags(bench, bf.synth);
  add_noise_flags(bench, bf.synth);
  add_pipeline_flags(bench, bpf);

  GuidanceFlags gf;
  CLI::App* guide = app.add_subcommand(
      "guidance-demo", "Run the white-background guidance math on a toy latent");
  guide->add_option("--size", gf.size, "Square latent side when no mask file is given (default 16)");
  guide->add_option("--steps", gf.steps, "Update steps (default 20)");
  guide->add_option("--scale", gf.scale, "Loss scale s (default 0.25)");
  guide->add_option("--alpha-bar", gf.alpha_bar, "Noise schedule value (default 0.5)");
  guide->add_option("--init", gf.init, "Initial latent value (default 0)");
  guide->add_option("--mask", gf.mask_path,
                    "Mask image file, nonzero = guided toward white (default: all pixels)");
  guide->add_option("-o,--output", gf.output, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*vec) return cmd_vectorize(vec, vf);
    if (*synth) {
      if (seed_opt->count() && !synth->count("--seed")) sf.seed = global_seed;
      return cmd_synth(sf, json_summary);
    }
    if (*bench) {
      if (seed_opt->count() && !bench->count("--seed-start"))
        bf.seed_start = global_seed;
      return cmd_bench(bench, bf, bpf, json_summary);
    }
    if (*guide) return cmd_guidance_demo(gf);
  } catch (const TooDenseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "hint: increase --snap-tol or --min-distance, or tighten "
                 "--min-thickness/--max-thickness/--min-length\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#pragma once

#include <cstdint>
#include <vector>

#include "pointforce/dynamics.hpp"
#include "pointforce/geometry.hpp"
#include "pointforce/io.hpp"
#include "pointforce/ranking.hpp"
#include "pointforce/scoring.hpp"

namespace pointforce {

// Full detection configuration. Values of 0 for spring_length, step, tau and
// xi_absolute mean "derive from the cloud": spring_length and tau default to
// the mean nearest-neighbor distance, step to step_multiplier * spring_length,
// and the graph radius to xi_multiplier * mean nearest-neighbor distance.
struct DetectConfig {
  // preprocessing
  int fps_target = 10000;  // 0 disables; applied only when target < N
  int fps_start_index = 0;
  double cube_edge = 64.0;  // 0 disables rescaling

  // graph
  double xi_multiplier = 2.5;
  double xi_absolute = 0.0;

  // forces
  double repulsion_scale = 0.2;
  double spring_length = 0.0;
  double decay_exponent = 2.0;
  double step = 0.0;
  double step_multiplier = 0.1;
  int iterations = 50;
  SignConvention sign = SignConvention::classical;

  // scoring
  double norm_radius_multiplier = 3.0;
  bool open_surface = false;
  double angle_gap_threshold = 1.5707963267948966;

  // ranking
  double gamma_pct = 3.0;
  double delta_pct = 5.0;
  double tau = 0.0;
};

struct DetectionResult {
  PointCloud processed;             // post-FPS, rescaled coordinates
  std::vector<int> original_index;  // per processed point
  std::vector<std::uint8_t> labels;
  ScoreField scores;  // final stage (boundary_applied when open surface)
  std::vector<double> displacements;
  std::vector<int> seeds;
  std::vector<int> optimizable;
  Manifest manifest;  // every resolved parameter of the run
};

void validate(const DetectConfig& config);

// preprocess -> graph -> forces -> energy -> local z-score -> clipped ReLU ->
// boundary condition (open surfaces) -> seeds -> optimizable set -> relax ->
// displacement classification.
DetectionResult detect(const PointCloud& cloud, const DetectConfig& config);

}  // namespace pointforce

#include "pointforce/pipeline.hpp"

#include <numeric>

#include "pointforce/errors.hpp"
#include "pointforce/preprocess.hpp"

namespace pointforce {

void validate(const DetectConfig& config) {
  if (config.fps_target < 0) throw ConfigError("fps target must be nonnegative");
  if (config.fps_start_index < 0) throw ConfigError("fps start index must be nonnegative");
  if (config.cube_edge < 0.0) throw ConfigError("cube edge must be nonnegative");
  if (!(config.xi_multiplier > 0.0) && !(config.xi_absolute > 0.0))
    throw ConfigError("graph radius requires a positive multiplier or absolute value");
  if (!(config.repulsion_scale > 0.0)) throw ConfigError("repulsion scale must be positive");
  if (config.spring_length < 0.0) throw ConfigError("spring length must be nonnegative");
  if (!(config.decay_exponent > 0.0)) throw ConfigError("decay exponent must be positive");
  if (config.step < 0.0) throw ConfigError("step must be nonnegative");
  if (config.step == 0.0 && !(config.step_multiplier > 0.0))
    throw ConfigError("step multiplier must be positive");
  if (config.iterations < 1) throw ConfigError("iterations must be at least 1");
  if (!(config.norm_radius_multiplier > 0.0))
    throw ConfigError("normalization radius multiplier must be positive");
  if (!(config.angle_gap_threshold > 0.0) || !(config.angle_gap_threshold < 6.283185307179586))
    throw ConfigError("angle gap threshold must lie in (0, 2*pi)");
  if (!(config.gamma_pct > 0.0) || config.gamma_pct > 100.0)
    throw ConfigError("gamma percentage must lie in (0, 100]");
  if (!(config.delta_pct > 0.0) || config.delta_pct > 100.0)
    throw ConfigError("delta percentage must lie in (0, 100]");
  if (config.tau < 0.0) throw ConfigError("tau must be nonnegative");
}

DetectionResult detect(const PointCloud& cloud, const DetectConfig& config) {
  validate(config);
  if (cloud.size() < 2) throw DataError("detection requires at least two points");

  DetectionResult result;
  Manifest& manifest = result.manifest;
  manifest.set("n_input", static_cast<long long>(cloud.size()));

  // Preprocess: optional FPS, optional cube rescale.
  result.processed = cloud;
  result.original_index.resize(cloud.size());
  std::iota(result.original_index.begin(), result.original_index.end(), 0);
  const bool fps_applied =
      config.fps_target > 0 && config.fps_target < static_cast<int>(cloud.size());
  if (fps_applied) {
    auto [sampled, map] =
        fps_downsample(result.processed, config.fps_target, config.fps_start_index);
    result.processed = std::move(sampled);
    result.original_index = std::move(map);
  }
  manifest.set("fps_applied", fps_applied);
  manifest.set("fps_target", config.fps_target);
  manifest.set("fps_start_index", config.fps_start_index);

  const bool rescaled = config.cube_edge > 0.0;
  Transform transform;
  if (rescaled) {
    auto [scaled, t] = rescale_to_cube(result.processed, config.cube_edge);
    result.processed = std::move(scaled);
    transform = t;
  }
  manifest.set("rescaled", rescaled);
  manifest.set("cube_edge", config.cube_edge);
  manifest.set("rescale_scale", transform.scale);
  const int n = static_cast<int>(result.processed.size());
  manifest.set("n", static_cast<long long>(n));

  // Resolve cloud-derived parameters.
  const double mnn = mean_nn_distance(result.processed);
  const double xi =
      config.xi_absolute > 0.0 ? config.xi_absolute : config.xi_multiplier * mnn;
  ForceParams force;
  force.repulsion_scale = config.repulsion_scale;
  force.spring_length = config.spring_length > 0.0 ? config.spring_length : mnn;
  force.decay_exponent = config.decay_exponent;
  force.step = config.step > 0.0 ? config.step : config.step_multiplier * force.spring_length;
  force.sign = config.sign;
  const double norm_radius = config.norm_radius_multiplier * xi;
  const double tau = config.tau > 0.0 ? config.tau : mnn;

  manifest.set("mean_nn_distance", mnn);
  manifest.set("xi", xi);
  manifest.set("xi_multiplier", config.xi_multiplier);
  manifest.set("repulsion_scale", force.repulsion_scale);
  manifest.set("spring_length", force.spring_length);
  manifest.set("decay_exponent", force.decay_exponent);
  manifest.set("step", force.step);
  manifest.set("iterations", config.iterations);
  manifest.set("sign_convention",
               std::string(force.sign == SignConvention::paper ? "paper" : "classical"));
  manifest.set("norm_radius", norm_radius);
  manifest.set("open_surface", config.open_surface);
  manifest.set("angle_gap_threshold", config.angle_gap_threshold);
  // Seed quota is a percentage of points; the displacement quota likewise.
  manifest.set("gamma_pct", config.gamma_pct);
  manifest.set("delta_pct", config.delta_pct);
  manifest.set("tau", tau);

  // Graph and energies.
  const SpatialIndex index(result.processed, xi);
  const RecurrenceGraph graph = build_recurrence_graph(result.processed, index, xi);
  manifest.set("graph_edges", static_cast<long long>(graph.edge_count()));
  const ForceField forces = compute_forces(result.processed, graph, force);
  const EnergyField energy = energy_field(forces);
  manifest.set("total_energy", energy.total);

  // Normalized scores.
  ScoreField scores = clipped_relu(local_zscore(energy, result.processed, index, norm_radius));
  int boundary_count = 0;
  if (config.open_surface) {
    BoundaryParams bp;
    bp.enabled = true;
    bp.angle_gap_threshold = config.angle_gap_threshold;
    const std::vector<int> boundary =
        detect_boundary_points(result.processed, index, graph, bp);
    boundary_count = static_cast<int>(boundary.size());
    scores = apply_boundary_condition(scores, boundary, graph);
  }
  manifest.set("boundary_points", boundary_count);
  result.scores = std::move(scores);

  // Two-stage ranking: seeds, optimizable set, relaxation, displacement cut.
  result.seeds = select_seeds(result.scores, config.gamma_pct);
  result.optimizable = build_optimizable_set(result.seeds, graph);
  manifest.set("seeds_count", static_cast<long long>(result.seeds.size()));
  manifest.set("optimizable_count", static_cast<long long>(result.optimizable.size()));

  auto [relaxed, displacement] =
      update_positions(result.processed, result.optimizable, graph, force, config.iterations);
  (void)relaxed;
  result.displacements = std::move(displacement);
  result.labels = classify(result.displacements, config.delta_pct, tau);

  long long label_count = 0;
  for (std::uint8_t l : result.labels) label_count += l != 0;
  manifest.set("labels_count", label_count);
  return result;
}

}  // namespace pointforce

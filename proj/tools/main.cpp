#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pointforce/errors.hpp"
#include "pointforce/io.hpp"
#include "pointforce/pipeline.hpp"
#include "pointforce/preprocess.hpp"
#include "pointforce/synth.hpp"
#include "pointforce/theorem.hpp"

namespace pf = pointforce;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitViolation = 3;

struct SynthOptions {
  std::string shape = "cube";
  double edge = 64.0;
  double cone_radius = 4.0;
  double cone_height = 10.0;
  int cones = 4;
  double density = 0.5;
  double noise_var = 0.1;
  std::uint64_t seed = 0;
  std::string out_cloud = "cloud.ply";
  std::string out_truth = "truth.csv";
  std::string out_manifest = "synth_manifest.txt";
};

struct DetectOptions {
  std::string input;
  std::string out_dir = ".";
  std::string sign = "classical";
  pf::DetectConfig config;
};

struct EvalOptions {
  std::string pred;
  std::string scores;
  std::string truth;
  std::string out = "metrics.txt";
};

struct VerifyOptions {
  std::string input;
  std::string out = "theorem_report.txt";
  bool per_point = false;
  double xi_multiplier = 2.5;
  double xi_absolute = 0.0;
  double repulsion_c = 0.2;
  double spring_k = 0.0;
  double decay_p = 2.0;
};

void write_cloud_by_extension(const std::string& path, const pf::PointCloud& cloud) {
  const auto dot = path.find_last_of('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "xyz" || ext == "txt")
    pf::write_xyz(path, cloud);
  else
    pf::write_ply(path, cloud);
}

int run_synth(const SynthOptions& opt) {
  pf::SyntheticSpec spec;
  spec.shape = opt.shape == "tetrahedron" ? pf::ShapeKind::tetrahedron : pf::ShapeKind::cube;
  spec.edge = opt.edge;
  spec.cone_radius = opt.cone_radius;
  spec.cone_height = opt.cone_height;
  spec.cone_count = opt.cones;
  spec.surface_density = opt.density;
  spec.noise_variance = opt.noise_var;
  spec.rng_seed = opt.seed;

  const pf::LabeledCloud labeled = pf::make_shape(spec);
  write_cloud_by_extension(opt.out_cloud, labeled.cloud);
  pf::write_truth_csv(opt.out_truth, labeled.truth);

  pf::Manifest manifest;
  manifest.set("shape", opt.shape);
  manifest.set("edge", spec.edge);
  manifest.set("cone_radius", spec.cone_radius);
  manifest.set("cone_height", spec.cone_height);
  manifest.set("cone_count", spec.cone_count);
  manifest.set("surface_density", spec.surface_density);
  manifest.set("noise_variance", spec.noise_variance);
  manifest.set("rng_seed", static_cast<long long>(spec.rng_seed));
  manifest.set("points", static_cast<long long>(labeled.cloud.size()));
  long long anomalies = 0;
  for (auto t : labeled.truth) anomalies += t != 0;
  manifest.set("anomaly_points", anomalies);
  for (std::size_t c = 0; c < labeled.cone_centers.size(); ++c) {
    const pf::Vec3& p = labeled.cone_centers[c];
    manifest.set("cone_center_" + std::to_string(c), pf::format_double(p.x) + " " +
                                                         pf::format_double(p.y) + " " +
                                                         pf::format_double(p.z));
  }
  pf::write_text_file(opt.out_manifest, manifest.to_text());

  std::cout << "wrote " << labeled.cloud.size() << " points (" << anomalies << " anomalous) to "
            << opt.out_cloud << "\n";
  return kExitOk;
}

pf::Rgb score_color(double score, bool labeled) {
  if (labeled) return {255, 0, 0};
  const double t = std::min(std::max(score / 2.0, 0.0), 1.0);
  const auto r = static_cast<std::uint8_t>(std::lround(255.0 * t));
  return {r, 0, static_cast<std::uint8_t>(255 - r)};
}

int run_detect(DetectOptions& opt) {
  if (opt.sign == "paper")
    opt.config.sign = pf::SignConvention::paper;
  else if (opt.sign == "classical")
    opt.config.sign = pf::SignConvention::classical;
  else
    throw pf::ConfigError("sign convention must be 'paper' or 'classical'");

  const pf::PointCloud cloud = pf::read_cloud(opt.input);
  pf::DetectionResult result = pf::detect(cloud, opt.config);
  result.manifest.set("input", opt.input);

  std::filesystem::create_directories(opt.out_dir);
  const auto out = [&](const char* name) {
    return (std::filesystem::path(opt.out_dir) / name).string();
  };
  pf::write_labels_csv(out("labels.csv"), result.original_index, result.labels);
  pf::write_scores_csv(out("scores.csv"), result.original_index, result.scores.values,
                       result.displacements);

  std::vector<pf::Rgb> colors(result.processed.size());
  for (std::size_t i = 0; i < colors.size(); ++i) {
    colors[i] = score_color(result.scores.values[i], result.labels[i] != 0);
  }
  pf::write_ply(out("heatmap.ply"), result.processed, colors);
  pf::write_text_file(out("manifest.txt"), result.manifest.to_text());

  long long labeled = 0;
  for (auto l : result.labels) labeled += l != 0;
  std::cout << "processed " << result.processed.size() << " points, " << result.seeds.size()
            << " seeds, " << result.optimizable.size() << " optimizable, " << labeled
            << " anomalies -> " << opt.out_dir << "\n";
  return kExitOk;
}

int run_eval(const EvalOptions& opt) {
  const pf::LabelRows labels = pf::read_labels_csv(opt.pred);
  const pf::ScoreRows scores = pf::read_scores_csv(opt.scores);
  const std::vector<std::uint8_t> full_truth = pf::read_truth_csv(opt.truth);

  if (labels.labels.size() != scores.scores.size() ||
      labels.orig_index != scores.orig_index)
    throw pf::DataError("label and score files do not describe the same points");
  std::vector<std::uint8_t> truth(labels.labels.size());
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int orig = labels.orig_index[i];
    if (orig < 0 || orig >= static_cast<int>(full_truth.size()))
      throw pf::DataError("orig_index " + std::to_string(orig) + " outside the truth file");
    truth[i] = full_truth[orig];
  }

  const pf::MetricsReport report = pf::evaluate(labels.labels, scores.scores, truth);
  const std::string text = pf::metrics_to_text(report);
  pf::write_text_file(opt.out, text);
  std::cout << text;
  return kExitOk;
}

int run_verify(const VerifyOptions& opt) {
  const pf::PointCloud cloud = pf::read_cloud(opt.input);
  const double mnn = pf::mean_nn_distance(cloud);
  const double xi = opt.xi_absolute > 0.0 ? opt.xi_absolute : opt.xi_multiplier * mnn;

  pf::ForceParams params;
  params.repulsion_scale = opt.repulsion_c;
  params.spring_length = opt.spring_k > 0.0 ? opt.spring_k : mnn;
  params.decay_exponent = opt.decay_p;
  params.step = 0.1 * params.spring_length;

  const pf::SpatialIndex index(cloud, xi);
  const pf::RecurrenceGraph graph = pf::build_recurrence_graph(cloud, index, xi);
  const pf::TheoremReport report = pf::verify_lower_bound(cloud, graph, params);
  pf::write_text_file(opt.out, pf::theorem_report_to_text(report, opt.per_point));

  std::cout << "checked " << report.checked << " points, " << report.violations
            << " violations\n";
  return report.violations > 0 ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spring-electrical force analysis and anomaly detection for 3D point clouds"};
  app.require_subcommand(1);

  SynthOptions synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "Generate a labeled synthetic shape");
  synth_cmd->add_option("--shape", synth.shape, "cube or tetrahedron")
      ->check(CLI::IsMember({"cube", "tetrahedron"}))
      ->capture_default_str();
  synth_cmd->add_option("--edge", synth.edge, "Shape edge length")->capture_default_str();
  synth_cmd->add_option("--cone-radius", synth.cone_radius, "Protrusion base radius")
      ->capture_default_str();
  synth_cmd->add_option("--cone-height", synth.cone_height, "Protrusion height")
      ->capture_default_str();
  synth_cmd->add_option("--cones", synth.cones, "Number of protrusions")->capture_default_str();
  synth_cmd->add_option("--density", synth.density, "Surface points per unit area")
      ->capture_default_str();
  synth_cmd->add_option("--noise-var", synth.noise_var, "Per-axis Gaussian noise variance")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "RNG seed")->capture_default_str();
  synth_cmd->add_option("--out-cloud", synth.out_cloud, "Output cloud (.ply or .xyz)")
      ->capture_default_str();
  synth_cmd->add_option("--out-truth", synth.out_truth, "Output truth CSV")
      ->capture_default_str();
  synth_cmd->add_option("--out-manifest", synth.out_manifest, "Output manifest")
      ->capture_default_str();

  DetectOptions det;
  CLI::App* detect_cmd = app.add_subcommand("detect", "Detect surface anomalies in a cloud");
  detect_cmd->set_config("--config", "", "Read key = value defaults from a file");
  detect_cmd->allow_config_extras(false);
  detect_cmd->add_option("--input", det.input, "Input cloud (.ply or .xyz)")->required();
  detect_cmd->add_option("--out-dir", det.out_dir, "Output directory")->capture_default_str();
  detect_cmd
      ->add_option("--fps", det.config.fps_target,
                   "Downsample to this many points (0 disables; skipped when the cloud is "
                   "already smaller)")
      ->capture_default_str();
  detect_cmd->add_option("--fps-start", det.config.fps_start_index, "Sampling start index")
      ->capture_default_str();
  detect_cmd
      ->add_option("--cube-edge", det.config.cube_edge, "Rescale into this cube (0 disables)")
      ->capture_default_str();
  detect_cmd
      ->add_option("--xi-multiplier", det.config.xi_multiplier,
                   "Graph radius as a multiple of the mean nearest-neighbor distance")
      ->capture_default_str();
  detect_cmd
      ->add_option("--xi-absolute", det.config.xi_absolute,
                   "Graph radius in scene units (overrides the multiplier when > 0)")
      ->capture_default_str();
  detect_cmd->add_option("--repulsion-c", det.config.repulsion_scale, "Repulsion scale")
      ->capture_default_str();
  detect_cmd
      ->add_option("--spring-k", det.config.spring_length,
                   "Natural spring length (0 = mean nearest-neighbor distance)")
      ->capture_default_str();
  detect_cmd->add_option("--decay-p", det.config.decay_exponent, "Repulsion decay exponent")
      ->capture_default_str();
  detect_cmd->add_option("--step", det.config.step, "Update step (0 = multiplier * spring)")
      ->capture_default_str();
  detect_cmd->add_option("--step-multiplier", det.config.step_multiplier, "Auto step factor")
      ->capture_default_str();
  detect_cmd->add_option("--iterations", det.config.iterations, "Relaxation iterations")
      ->capture_default_str();
  detect_cmd->add_option("--sign-convention", det.sign, "Force signs: paper or classical")
      ->check(CLI::IsMember({"paper", "classical"}))
      ->capture_default_str();
  detect_cmd
      ->add_option("--norm-radius-multiplier", det.config.norm_radius_multiplier,
                   "Normalization window radius as a multiple of the graph radius")
      ->capture_default_str();
  detect_cmd->add_flag("--open-surface", det.config.open_surface,
                       "Suppress boundary energy on open surfaces");
  detect_cmd
      ->add_option("--angle-gap", det.config.angle_gap_threshold,
                   "Boundary angle-gap threshold in radians")
      ->capture_default_str();
  detect_cmd->add_option("--gamma-pct", det.config.gamma_pct, "Seed percentage")
      ->capture_default_str();
  detect_cmd->add_option("--delta-pct", det.config.delta_pct, "Displacement-rank percentage")
      ->capture_default_str();
  detect_cmd
      ->add_option("--tau", det.config.tau,
                   "Displacement threshold (0 = mean nearest-neighbor distance)")
      ->capture_default_str();

  EvalOptions ev;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score predictions against ground truth");
  eval_cmd->add_option("--pred", ev.pred, "labels.csv from detect")->required();
  eval_cmd->add_option("--scores", ev.scores, "scores.csv from detect")->required();
  eval_cmd->add_option("--truth", ev.truth, "truth.csv from synth")->required();
  eval_cmd->add_option("--out", ev.out, "Output metrics file")->capture_default_str();

  VerifyOptions ver;
  CLI::App* verify_cmd =
      app.add_subcommand("verify-theorem", "Check the force lower bound on a cloud");
  verify_cmd->add_option("--input", ver.input, "Input cloud (.ply or .xyz)")->required();
  verify_cmd->add_option("--out", ver.out, "Output report file")->capture_default_str();
  verify_cmd->add_flag("--per-point", ver.per_point, "Include per-point rows in the report");
  verify_cmd->add_option("--xi-multiplier", ver.xi_multiplier, "Graph radius multiplier")
      ->capture_default_str();
  verify_cmd->add_option("--xi-absolute", ver.xi_absolute, "Graph radius in scene units")
      ->capture_default_str();
  verify_cmd->add_option("--repulsion-c", ver.repulsion_c, "Repulsion scale")
      ->capture_default_str();
  verify_cmd->add_option("--spring-k", ver.spring_k, "Natural spring length (0 = mean NN)")
      ->capture_default_str();
  verify_cmd->add_option("--decay-p", ver.decay_p, "Repulsion decay exponent")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (synth_cmd->parsed()) return run_synth(synth);
    if (detect_cmd->parsed()) return run_detect(det);
    if (eval_cmd->parsed()) return run_eval(ev);
    if (verify_cmd->parsed()) return run_verify(ver);
  } catch (const pf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const pf::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

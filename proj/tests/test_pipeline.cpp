#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "pointforce/errors.hpp"
#include "pointforce/pipeline.hpp"
#include "pointforce/synth.hpp"

using namespace pointforce;

namespace {

PointCloud plane_patch(int side, double spacing = 1.0) {
  PointCloud cloud;
  for (int y = 0; y < side; ++y)
    for (int x = 0; x < side; ++x) cloud.push_back({x * spacing, y * spacing, 0.0});
  return cloud;
}

}  // namespace

TEST_CASE("config validation rejects out-of-range parameters") {
  DetectConfig config;
  config.gamma_pct = 0.0;
  CHECK_THROWS_AS(validate(config), ConfigError);
  config = DetectConfig{};
  config.delta_pct = 101.0;
  CHECK_THROWS_AS(validate(config), ConfigError);
  config = DetectConfig{};
  config.iterations = 0;
  CHECK_THROWS_AS(validate(config), ConfigError);
  config = DetectConfig{};
  CHECK_NOTHROW(validate(config));
}

TEST_CASE("labels are confined to the optimizable set and its quota") {
  const PointCloud cloud = oracle::random_cloud(600, 211, 20.0);
  DetectConfig config;
  config.fps_target = 0;
  config.cube_edge = 0.0;
  config.iterations = 10;
  const DetectionResult result = detect(cloud, config);

  CHECK(result.labels.size() == cloud.size());
  CHECK(result.scores.size() == static_cast<int>(cloud.size()));
  long label_count = 0;
  for (std::size_t i = 0; i < result.labels.size(); ++i) {
    if (!result.labels[i]) continue;
    ++label_count;
    CHECK(std::binary_search(result.optimizable.begin(), result.optimizable.end(),
                             static_cast<int>(i)));
  }
  CHECK(label_count <= static_cast<long>(std::ceil(config.delta_pct / 100.0 * cloud.size())));

  // Non-movable points never move.
  for (std::size_t i = 0; i < result.labels.size(); ++i) {
    if (!std::binary_search(result.optimizable.begin(), result.optimizable.end(),
                            static_cast<int>(i))) {
      CHECK(result.displacements[i] == 0.0);
      CHECK(result.labels[i] == 0);
    }
  }

  // Clipped scores stay in range.
  for (double s : result.scores.values) {
    CHECK(s >= 0.0);
    CHECK(s <= 2.0);
  }

  // Seeds obey their quota.
  CHECK(result.seeds.size() <=
        static_cast<std::size_t>(std::ceil(config.gamma_pct / 100.0 * cloud.size())));
}

TEST_CASE("fps is applied only when the target is below the input size") {
  const PointCloud cloud = oracle::random_cloud(500, 223, 30.0);
  DetectConfig config;
  config.fps_target = 200;
  config.iterations = 5;
  const DetectionResult sampled = detect(cloud, config);
  CHECK(sampled.processed.size() == 200);
  CHECK(sampled.original_index.size() == 200);

  config.fps_target = 5000;  // larger than the cloud: pass through
  const DetectionResult full = detect(cloud, config);
  CHECK(full.processed.size() == cloud.size());

  config.fps_target = 0;  // disabled
  const DetectionResult off = detect(cloud, config);
  CHECK(off.processed.size() == cloud.size());
}

TEST_CASE("a defect-free open patch produces no labels with boundary handling") {
  const PointCloud patch = plane_patch(30);
  DetectConfig config;
  config.fps_target = 0;
  config.cube_edge = 0.0;
  config.open_surface = true;
  config.iterations = 20;
  const DetectionResult result = detect(patch, config);
  for (std::uint8_t l : result.labels) CHECK(l == 0);
  CHECK(result.scores.stage == ScoreStage::boundary_applied);
}

TEST_CASE("detection on a one-cone cube beats the reference floor") {
  SyntheticSpec spec;
  spec.cone_count = 1;
  spec.surface_density = 0.15;  // ~3.7k points: a fast desk-scale instance
  spec.rng_seed = 31;
  const LabeledCloud lc = make_shape(spec);

  DetectConfig config;
  config.fps_target = 3000;
  const DetectionResult result = detect(lc.cloud, config);

  std::vector<std::uint8_t> truth(result.processed.size());
  for (std::size_t i = 0; i < truth.size(); ++i)
    truth[i] = lc.truth[result.original_index[i]];
  const MetricsReport report = evaluate(result.labels, result.scores.values, truth);
  CHECK(report.f1 >= 0.7);
}

TEST_CASE("two detect runs are identical") {
  const PointCloud cloud = oracle::random_cloud(400, 227, 25.0);
  DetectConfig config;
  config.fps_target = 300;
  config.iterations = 10;
  const DetectionResult a = detect(cloud, config);
  const DetectionResult b = detect(cloud, config);
  CHECK(a.labels == b.labels);
  CHECK(a.seeds == b.seeds);
  CHECK(a.optimizable == b.optimizable);
  CHECK(a.scores.values == b.scores.values);
  CHECK(a.displacements == b.displacements);
  CHECK(a.manifest.to_text() == b.manifest.to_text());
}

TEST_CASE("the manifest records every resolved parameter") {
  const PointCloud cloud = oracle::random_cloud(300, 229, 10.0);
  DetectConfig config;
  config.fps_target = 250;
  config.iterations = 5;
  const DetectionResult result = detect(cloud, config);
  const std::string text = result.manifest.to_text();
  for (const char* key :
       {"n_input", "fps_target", "cube_edge", "mean_nn_distance", "xi", "repulsion_scale",
        "spring_length", "decay_exponent", "step", "iterations", "sign_convention",
        "norm_radius", "gamma_pct", "delta_pct", "tau", "seeds_count", "optimizable_count",
        "labels_count", "graph_edges"}) {
    CAPTURE(key);
    CHECK(text.find(key) != std::string::npos);
  }
}

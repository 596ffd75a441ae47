#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "doctest.h"
#include "pointforce/errors.hpp"
#include "pointforce/synth.hpp"

using namespace pointforce;

namespace {

// Distance from a point to the closed cube surface [0, e]^3.
double cube_surface_distance(const Vec3& p, double e) {
  const double dx = std::min(std::fabs(p.x), std::fabs(e - p.x));
  const double dy = std::min(std::fabs(p.y), std::fabs(e - p.y));
  const double dz = std::min(std::fabs(p.z), std::fabs(e - p.z));
  return std::min({dx, dy, dz});
}

}  // namespace

TEST_CASE("defect-free generation stays on the surface with zero truth") {
  SyntheticSpec spec;
  spec.cone_count = 0;
  spec.noise_variance = 0.0;
  spec.surface_density = 0.1;
  spec.rng_seed = 42;
  const LabeledCloud lc = make_shape(spec);
  CHECK(lc.cloud.size() == lc.truth.size());
  CHECK(lc.cloud.size() > 1000);
  for (std::uint8_t t : lc.truth) CHECK(t == 0);
  for (const Vec3& p : lc.cloud) {
    CHECK(cube_surface_distance(p, spec.edge) <= 1e-9);
    CHECK(p.x >= -1e-9);
    CHECK(p.x <= spec.edge + 1e-9);
  }
}

TEST_CASE("noise-free tetrahedron points lie on its faces") {
  SyntheticSpec spec;
  spec.shape = ShapeKind::tetrahedron;
  spec.cone_count = 0;
  spec.noise_variance = 0.0;
  spec.surface_density = 0.2;
  spec.rng_seed = 4;
  const LabeledCloud lc = make_shape(spec);
  CHECK(lc.cloud.size() > 500);

  // Faces of the regular tetrahedron with vertices (s,s,s), (s,-s,-s),
  // (-s,s,-s), (-s,-s,s): the supporting planes are x+y+z = -s and the three
  // planes with one negated coordinate equal to +s.
  const double s = spec.edge / (2.0 * std::numbers::sqrt2);
  for (const Vec3& p : lc.cloud) {
    const double r1 = std::fabs(p.x + p.y + p.z + s);
    const double r2 = std::fabs(-p.x + p.y + p.z - s);
    const double r3 = std::fabs(p.x - p.y + p.z - s);
    const double r4 = std::fabs(p.x + p.y - p.z - s);
    CHECK(std::min({r1, r2, r3, r4}) <= 1e-9 * spec.edge);
  }
}

TEST_CASE("cone points stay within the cone envelope") {
  SyntheticSpec spec;
  spec.cone_count = 1;
  spec.noise_variance = 0.0;
  spec.surface_density = 0.5;
  spec.rng_seed = 7;
  const LabeledCloud lc = make_shape(spec);
  REQUIRE(lc.cone_centers.size() == 1);
  const Vec3 center = lc.cone_centers[0];

  // The host face normal is the axis on which the center sits at 0 or edge.
  Vec3 normal{0, 0, 0};
  if (std::fabs(center.x) <= 1e-9 || std::fabs(center.x - spec.edge) <= 1e-9)
    normal = {center.x > spec.edge / 2 ? 1.0 : -1.0, 0, 0};
  else if (std::fabs(center.y) <= 1e-9 || std::fabs(center.y - spec.edge) <= 1e-9)
    normal = {0, center.y > spec.edge / 2 ? 1.0 : -1.0, 0};
  else
    normal = {0, 0, center.z > spec.edge / 2 ? 1.0 : -1.0};
  REQUIRE(normal.norm() == 1.0);

  long cone_points = 0;
  for (std::size_t i = 0; i < lc.cloud.size(); ++i) {
    if (!lc.truth[i]) continue;
    ++cone_points;
    const Vec3 d = lc.cloud[i] - center;
    const double outward = dot(d, normal);
    const double radial = std::sqrt(std::max(d.squared_norm() - outward * outward, 0.0));
    CHECK(outward >= -1e-9);
    CHECK(outward <= spec.cone_height + 1e-9);
    CHECK(radial <= spec.cone_radius + 1e-9);
  }
  CHECK(cone_points >= 1);
}

TEST_CASE("anomaly fraction tracks the analytic area ratio") {
  SyntheticSpec spec;
  spec.cone_count = 4;
  spec.noise_variance = 0.0;
  spec.surface_density = 0.5;  // ~12k points on the cube
  spec.rng_seed = 11;
  const LabeledCloud lc = make_shape(spec);

  const double slant = std::hypot(spec.cone_radius, spec.cone_height);
  const double lateral = std::numbers::pi * spec.cone_radius * slant;
  const double disk = std::numbers::pi * spec.cone_radius * spec.cone_radius;
  const double flat = 6.0 * spec.edge * spec.edge - spec.cone_count * disk;
  const double expected = spec.cone_count * lateral / (flat + spec.cone_count * lateral);

  const double truth_count =
      static_cast<double>(std::accumulate(lc.truth.begin(), lc.truth.end(), 0L));
  const double fraction = truth_count / static_cast<double>(lc.truth.size());
  CHECK(fraction == doctest::Approx(expected).epsilon(0.2));
  CHECK(lc.cloud.size() > 10000);
}

TEST_CASE("infeasible cone placement errors out") {
  SyntheticSpec spec;
  spec.cone_count = 500;  // cannot fit 500 non-overlapping radius-4 disks
  spec.surface_density = 0.05;
  CHECK_THROWS_WITH(make_shape(spec), "placement infeasible");
}

TEST_CASE("generation is deterministic given the spec") {
  SyntheticSpec spec;
  spec.cone_count = 3;
  spec.surface_density = 0.2;
  spec.rng_seed = 123;
  const LabeledCloud a = make_shape(spec);
  const LabeledCloud b = make_shape(spec);
  REQUIRE(a.cloud.size() == b.cloud.size());
  for (std::size_t i = 0; i < a.cloud.size(); ++i) {
    CHECK(a.cloud[i].x == b.cloud[i].x);
    CHECK(a.cloud[i].y == b.cloud[i].y);
    CHECK(a.cloud[i].z == b.cloud[i].z);
  }
  CHECK(a.truth == b.truth);
}

TEST_CASE("zero-variance noise is the identity") {
  const PointCloud cloud{{1, 2, 3}, {4, 5, 6}};
  const PointCloud noisy = add_gaussian_noise(cloud, 0.0, 99);
  CHECK(noisy[0].x == 1.0);
  CHECK(noisy[1].z == 6.0);
}

TEST_CASE("noise matches the requested per-axis variance") {
  PointCloud cloud(100000, Vec3{0, 0, 0});
  const PointCloud noisy = add_gaussian_noise(cloud, 0.1, 2024);
  double mean_x = 0.0, var_x = 0.0, var_y = 0.0, var_z = 0.0;
  for (const Vec3& p : noisy) mean_x += p.x;
  mean_x /= static_cast<double>(noisy.size());
  for (const Vec3& p : noisy) {
    var_x += p.x * p.x;
    var_y += p.y * p.y;
    var_z += p.z * p.z;
  }
  var_x /= static_cast<double>(noisy.size());
  var_y /= static_cast<double>(noisy.size());
  var_z /= static_cast<double>(noisy.size());
  CHECK(std::fabs(mean_x) < 0.01);
  CHECK(var_x > 0.09);
  CHECK(var_x < 0.11);
  CHECK(var_y > 0.09);
  CHECK(var_y < 0.11);
  CHECK(var_z > 0.09);
  CHECK(var_z < 0.11);
}

TEST_CASE("same noise seed reproduces the same offsets") {
  const PointCloud cloud{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}};
  const PointCloud a = add_gaussian_noise(cloud, 0.5, 7);
  const PointCloud b = add_gaussian_noise(cloud, 0.5, 7);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].y == b[i].y);
    CHECK(a[i].z == b[i].z);
  }
}

#pragma once

#include <cstdint>
#include <vector>

#include "pointforce/geometry.hpp"

namespace pointforce {

enum class ShapeKind { cube, tetrahedron };

struct SyntheticSpec {
  ShapeKind shape = ShapeKind::cube;
  double edge = 64.0;
  double cone_radius = 4.0;
  double cone_height = 10.0;
  int cone_count = 4;
  double surface_density = 0.5;  // points per unit area
  double noise_variance = 0.1;   // per-axis Gaussian variance
  std::uint64_t rng_seed = 0;
};

struct LabeledCloud {
  PointCloud cloud;
  std::vector<std::uint8_t> truth;  // 1 = point sampled from a cone surface
  std::vector<Vec3> cone_centers;   // base-disk centers, one per placed cone
};

// Uniformly samples the closed surface of the requested shape, replaces
// disk regions with outward conical protrusions sampled at matching density,
// then perturbs every coordinate with Gaussian noise. Fully deterministic
// given the spec. Cone centers keep a cone_radius margin from face edges and
// never overlap; infeasible placements raise a DataError.
LabeledCloud make_shape(const SyntheticSpec& spec);

// Adds independent zero-mean Gaussian offsets with the given variance to each
// coordinate of each point.
PointCloud add_gaussian_noise(const PointCloud& cloud, double variance, std::uint64_t rng_seed);

}  // namespace pointforce

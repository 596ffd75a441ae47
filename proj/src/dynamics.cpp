#include "pointforce/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pointforce/errors.hpp"

namespace pointforce {

namespace {

void validate(const ForceParams& params) {
  if (!(params.repulsion_scale > 0.0)) throw ConfigError("repulsion scale must be positive");
  if (!(params.spring_length > 0.0)) throw ConfigError("spring length must be positive");
  if (!(params.decay_exponent > 0.0)) throw ConfigError("decay exponent must be positive");
  if (!(params.step > 0.0)) throw ConfigError("step size must be positive");
}

[[noreturn]] void throw_coincident(int i, int j) {
  throw DataError("coincident points: indices " + std::to_string(i) + " and " +
                  std::to_string(j));
}

}  // namespace

Vec3 repulsive_force(int i, const PointCloud& cloud, const ForceParams& params) {
  validate(params);
  const int n = static_cast<int>(cloud.size());
  const double coeff =
      params.repulsion_scale * std::pow(params.spring_length, params.decay_exponent + 1.0);
  const double eps2 = params.coincident_eps * params.coincident_eps;
  const bool inverse_square = params.decay_exponent == 2.0;
  const Vec3 vi = cloud[i];

  Vec3 sum{};
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const Vec3 d = vi - cloud[j];
    const double d2 = d.squared_norm();
    if (d2 < eps2) throw_coincident(i, j);
    const double factor =
        inverse_square ? coeff / d2 : coeff / std::pow(d2, 0.5 * params.decay_exponent);
    sum -= factor * d;
  }
  return sum;
}

Vec3 attractive_force(int i, const PointCloud& cloud, const RecurrenceGraph& graph,
                      const ForceParams& params) {
  validate(params);
  const Vec3 vi = cloud[i];
  const double inv_k = 1.0 / params.spring_length;

  Vec3 sum{};
  for (int j : graph.neighbors[i]) {
    const Vec3 d = vi - cloud[j];
    sum += (d.norm() * inv_k) * d;
  }
  return sum;
}

Vec3 net_force(int i, const PointCloud& cloud, const RecurrenceGraph& graph,
               const ForceParams& params) {
  const Vec3 f = repulsive_force(i, cloud, params) + attractive_force(i, cloud, graph, params);
  return params.sign == SignConvention::paper ? f : -f;
}

ForceField compute_forces(const PointCloud& cloud, const RecurrenceGraph& graph,
                          const ForceParams& params) {
  validate(params);
  if (graph.size() != static_cast<int>(cloud.size()))
    throw ConfigError("graph does not match the cloud");

  const int n = static_cast<int>(cloud.size());
  ForceField field(n);
  int bad_index = n;
  std::string bad_message;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    try {
      field[i] = net_force(i, cloud, graph, params);
    } catch (const DataError& e) {
#pragma omp critical
      {
        if (i < bad_index) {
          bad_index = i;
          bad_message = e.what();
        }
      }
    }
  }
  if (bad_index < n) throw DataError(bad_message);
  return field;
}

EnergyField energy_field(const ForceField& forces) {
  EnergyField energy;
  energy.values.reserve(forces.size());
  for (const Vec3& f : forces) energy.values.push_back(f.squared_norm());
  energy.total = 0.0;
  for (double e : energy.values) energy.total += e;
  return energy;
}

std::pair<PointCloud, std::vector<double>> update_positions(const PointCloud& cloud,
                                                            const std::vector<int>& movable,
                                                            const RecurrenceGraph& graph,
                                                            const ForceParams& params,
                                                            int iterations) {
  validate(params);
  if (iterations < 1) throw ConfigError("iteration count must be at least 1");
  const int n = static_cast<int>(cloud.size());
  for (int m : movable) {
    if (m < 0 || m >= n) throw ConfigError("movable index out of range");
  }

  PointCloud positions = cloud;
  std::vector<Vec3> forces(movable.size());
  const int k = static_cast<int>(movable.size());

  for (int it = 0; it < iterations; ++it) {
    int bad = k;
    std::string bad_message;
    // Forces over the snapshot first, then simultaneous moves.
#pragma omp parallel for schedule(static)
    for (int m = 0; m < k; ++m) {
      try {
        forces[m] = net_force(movable[m], positions, graph, params);
      } catch (const DataError& e) {
#pragma omp critical
        {
          if (m < bad) {
            bad = m;
            bad_message = e.what();
          }
        }
      }
    }
    if (bad < k) throw DataError(bad_message);
    for (int m = 0; m < k; ++m) {
      const double magnitude = forces[m].norm();
      if (magnitude > params.force_eps) {
        positions[movable[m]] += (params.step / magnitude) * forces[m];
      }
    }
  }

  std::vector<double> displacement(n, 0.0);
  for (int m : movable) displacement[m] = distance(positions[m], cloud[m]);
  return {std::move(positions), std::move(displacement)};
}

}  // namespace pointforce

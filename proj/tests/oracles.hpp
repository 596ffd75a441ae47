// Independent brute-force reference implementations used only by tests.
// These deliberately avoid the library's accelerated code paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "pointforce/dynamics.hpp"
#include "pointforce/geometry.hpp"
#include "pointforce/graph.hpp"

namespace oracle {

using pointforce::PointCloud;
using pointforce::Vec3;

inline PointCloud random_cloud(int n, std::uint64_t seed, double extent = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, extent);
  PointCloud cloud;
  cloud.reserve(n);
  for (int i = 0; i < n; ++i) cloud.push_back({coord(rng), coord(rng), coord(rng)});
  return cloud;
}

inline std::vector<int> brute_radius_neighbors(const PointCloud& cloud, int i, double radius) {
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(cloud.size()); ++j) {
    if (j != i && pointforce::distance(cloud[j], cloud[i]) < radius) out.push_back(j);
  }
  return out;
}

inline double brute_mean_nn(const PointCloud& cloud) {
  double sum = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < cloud.size(); ++j) {
      if (i != j) best = std::min(best, pointforce::distance(cloud[i], cloud[j]));
    }
    sum += best;
  }
  return sum / static_cast<double>(cloud.size());
}

// Farthest point sampling recomputed from scratch each round: min distance to
// the selected set by full scan, ties broken toward the lowest index.
inline std::vector<int> brute_fps(const PointCloud& cloud, int target, int start) {
  std::vector<int> selected{start};
  while (static_cast<int>(selected.size()) < target) {
    int arg = -1;
    double best = -1.0;
    for (int i = 0; i < static_cast<int>(cloud.size()); ++i) {
      if (std::find(selected.begin(), selected.end(), i) != selected.end()) continue;
      double d = std::numeric_limits<double>::infinity();
      for (int s : selected) d = std::min(d, pointforce::distance(cloud[i], cloud[s]));
      if (d > best) {
        best = d;
        arg = i;
      }
    }
    selected.push_back(arg);
  }
  return selected;
}

// Dense Heaviside adjacency with H(0) = 0.
inline std::vector<std::vector<int>> dense_adjacency(const PointCloud& cloud, double xi) {
  const int n = static_cast<int>(cloud.size());
  std::vector<std::vector<int>> adjacency(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double h = xi - pointforce::distance(cloud[i], cloud[j]);
      adjacency[i][j] = h > 0.0 ? 1 : 0;
    }
  }
  return adjacency;
}

// Pairwise force accumulation over unordered pairs, exploiting antisymmetry.
// A genuinely different summation structure from the per-point evaluation.
inline std::vector<Vec3> pairwise_forces(const PointCloud& cloud,
                                         const pointforce::RecurrenceGraph& graph,
                                         const pointforce::ForceParams& params) {
  const int n = static_cast<int>(cloud.size());
  std::vector<Vec3> f(n);
  const double coeff =
      params.repulsion_scale * std::pow(params.spring_length, params.decay_exponent + 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vec3 d = cloud[i] - cloud[j];
      const double dist = d.norm();
      const Vec3 repulsive = (-coeff / std::pow(dist, params.decay_exponent)) * d;
      f[i] += repulsive;
      f[j] -= repulsive;
      const bool adjacent = std::find(graph.neighbors[i].begin(), graph.neighbors[i].end(), j) !=
                            graph.neighbors[i].end();
      if (adjacent) {
        const Vec3 attractive = (dist / params.spring_length) * d;
        f[i] += attractive;
        f[j] -= attractive;
      }
    }
  }
  if (params.sign == pointforce::SignConvention::classical) {
    for (Vec3& v : f) v = -v;
  }
  return f;
}

// Direct per-point double loop in plain arrays.
inline Vec3 naive_net_force(int i, const PointCloud& cloud,
                            const pointforce::RecurrenceGraph& graph,
                            const pointforce::ForceParams& params) {
  const double coeff =
      params.repulsion_scale * std::pow(params.spring_length, params.decay_exponent + 1.0);
  double fx = 0.0, fy = 0.0, fz = 0.0;
  for (int j = 0; j < static_cast<int>(cloud.size()); ++j) {
    if (j == i) continue;
    const double dx = cloud[i].x - cloud[j].x;
    const double dy = cloud[i].y - cloud[j].y;
    const double dz = cloud[i].z - cloud[j].z;
    const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
    const double w = -coeff / std::pow(dist, params.decay_exponent);
    fx += w * dx;
    fy += w * dy;
    fz += w * dz;
  }
  for (int j : graph.neighbors[i]) {
    const double dx = cloud[i].x - cloud[j].x;
    const double dy = cloud[i].y - cloud[j].y;
    const double dz = cloud[i].z - cloud[j].z;
    const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
    const double w = dist / params.spring_length;
    fx += w * dx;
    fy += w * dy;
    fz += w * dz;
  }
  if (params.sign == pointforce::SignConvention::classical) {
    fx = -fx;
    fy = -fy;
    fz = -fz;
  }
  return {fx, fy, fz};
}

struct WindowStats {
  double mean = 0.0;
  double sigma = 0.0;
};

inline WindowStats window_stats(const std::vector<double>& values) {
  WindowStats s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sigma = std::sqrt(ss / static_cast<double>(values.size()));
  return s;
}

// ROC curve built by sweeping a threshold over the unique score values and
// integrating with the trapezoid rule.
inline double trapezoid_auroc(const std::vector<double>& scores,
                              const std::vector<std::uint8_t>& truth) {
  std::vector<double> thresholds = scores;
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  long p = 0, n = 0;
  for (std::uint8_t t : truth) (t != 0 ? p : n) += 1;

  // Points from (0,0) at threshold above max to (1,1) below min; predict
  // positive when score >= threshold.
  std::vector<std::pair<double, double>> curve{{0.0, 0.0}};
  for (auto it = thresholds.rbegin(); it != thresholds.rend(); ++it) {
    long tp = 0, fp = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] >= *it) (truth[i] != 0 ? tp : fp) += 1;
    }
    curve.emplace_back(static_cast<double>(fp) / n, static_cast<double>(tp) / p);
  }
  curve.emplace_back(1.0, 1.0);

  double area = 0.0;
  for (std::size_t k = 1; k < curve.size(); ++k) {
    area += (curve[k].first - curve[k - 1].first) * (curve[k].second + curve[k - 1].second) / 2.0;
  }
  return area;
}

}  // namespace oracle

#include "pointforce/scoring.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "pointforce/errors.hpp"

namespace pointforce {

namespace {
constexpr double kSigmaGuard = 1e-12;
}

ScoreField local_zscore(const EnergyField& energy, const PointCloud& cloud,
                        const SpatialIndex& index, double norm_radius) {
  if (!(norm_radius > 0.0)) throw ConfigError("normalization radius must be positive");
  if (energy.size() != static_cast<int>(cloud.size()) || index.size() != energy.size())
    throw ConfigError("energy field does not match the cloud");

  const int n = energy.size();
  ScoreField out;
  out.stage = ScoreStage::raw_z;
  out.values.assign(n, 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const std::vector<int> nbrs = index.radius_neighbors(i, norm_radius);
    const int count = static_cast<int>(nbrs.size()) + 1;  // window includes the point
    double sum = energy.values[i];
    for (int j : nbrs) sum += energy.values[j];
    const double mean = sum / count;
    double ss = (energy.values[i] - mean) * (energy.values[i] - mean);
    for (int j : nbrs) ss += (energy.values[j] - mean) * (energy.values[j] - mean);
    const double sigma = std::sqrt(ss / count);
    out.values[i] = sigma < kSigmaGuard ? 0.0 : (energy.values[i] - mean) / sigma;
  }
  return out;
}

ScoreField clipped_relu(const ScoreField& scores) {
  if (scores.stage != ScoreStage::raw_z)
    throw ConfigError("clipped ReLU expects raw z-scores");
  ScoreField out;
  out.stage = ScoreStage::clipped;
  out.values.reserve(scores.values.size());
  for (double v : scores.values) out.values.push_back(std::min(std::max(0.0, v), 2.0));
  return out;
}

std::vector<int> detect_boundary_points(const PointCloud& cloud, const SpatialIndex& index,
                                        const RecurrenceGraph& graph,
                                        const BoundaryParams& params) {
  if (!params.enabled) throw ConfigError("boundary detection invoked while disabled");
  if (!(params.angle_gap_threshold > 0.0) ||
      !(params.angle_gap_threshold < 2.0 * std::numbers::pi))
    throw ConfigError("angle gap threshold must lie in (0, 2*pi)");
  if (graph.size() != static_cast<int>(cloud.size()))
    throw ConfigError("graph does not match the cloud");
  (void)index;

  const int n = static_cast<int>(cloud.size());
  std::vector<char> is_boundary(n, 0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const std::vector<int>& nbrs = graph.neighbors[i];
    if (nbrs.size() < 3) {
      is_boundary[i] = 1;  // too few points to fit a plane
      continue;
    }

    Vec3 centroid{};
    for (int j : nbrs) centroid += cloud[j];
    centroid = centroid / static_cast<double>(nbrs.size());

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (int j : nbrs) {
      const Vec3 d = cloud[j] - centroid;
      const Eigen::Vector3d v(d.x, d.y, d.z);
      cov += v * v.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
    // Eigenvalues ascending: columns 1 and 2 span the tangent plane.
    const Eigen::Vector3d e1 = solver.eigenvectors().col(2);
    const Eigen::Vector3d e2 = solver.eigenvectors().col(1);

    std::vector<double> angles;
    angles.reserve(nbrs.size());
    for (int j : nbrs) {
      const Vec3 d = cloud[j] - cloud[i];
      const Eigen::Vector3d v(d.x, d.y, d.z);
      angles.push_back(std::atan2(v.dot(e2), v.dot(e1)));
    }
    std::sort(angles.begin(), angles.end());
    double max_gap = angles.front() + 2.0 * std::numbers::pi - angles.back();
    for (std::size_t k = 1; k < angles.size(); ++k)
      max_gap = std::max(max_gap, angles[k] - angles[k - 1]);

    if (max_gap > params.angle_gap_threshold) is_boundary[i] = 1;
  }

  std::vector<int> boundary;
  for (int i = 0; i < n; ++i) {
    if (is_boundary[i]) boundary.push_back(i);
  }
  return boundary;
}

ScoreField apply_boundary_condition(const ScoreField& scores, const std::vector<int>& boundary,
                                    const RecurrenceGraph& graph) {
  if (scores.stage == ScoreStage::raw_z)
    throw ConfigError("boundary condition expects clipped scores");
  if (graph.size() != scores.size()) throw ConfigError("graph does not match the score field");

  ScoreField out = scores;
  out.stage = ScoreStage::boundary_applied;
  std::vector<char> mark(scores.values.size(), 0);
  for (int b : boundary) {
    mark[b] = 1;
    for (int j : graph.neighbors[b]) mark[j] = 1;
  }
  for (std::size_t i = 0; i < mark.size(); ++i) {
    if (mark[i]) out.values[i] = 0.25;
  }
  return out;
}

}  // namespace pointforce

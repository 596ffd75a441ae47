#include "pointforce/theorem.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pointforce/errors.hpp"

namespace pointforce {

namespace {
constexpr double kKappaEps = 1e-12;
constexpr double kBoundTolerance = 1e-9;
constexpr double kCauchyTolerance = 1e-12;
}  // namespace

Vec3 local_centroid(int i, const PointCloud& cloud, const RecurrenceGraph& graph) {
  const std::vector<int>& nbrs = graph.neighbors[i];
  if (nbrs.empty()) throw DataError("empty neighborhood for point " + std::to_string(i));
  Vec3 sum{};
  for (int j : nbrs) sum += cloud[j];
  return sum / static_cast<double>(nbrs.size());
}

Vec3 kappa(int i, const PointCloud& cloud, const RecurrenceGraph& graph) {
  return cloud[i] - local_centroid(i, cloud, graph);
}

std::pair<double, double> theorem_bounds(int i, const PointCloud& cloud,
                                         const RecurrenceGraph& graph,
                                         const ForceParams& params) {
  const std::vector<int>& nbrs = graph.neighbors[i];
  if (nbrs.empty()) throw DataError("empty neighborhood for point " + std::to_string(i));

  double lambda_min = std::numeric_limits<double>::infinity();
  for (int j : nbrs) lambda_min = std::fmin(lambda_min, distance(cloud[i], cloud[j]));
  if (lambda_min < params.coincident_eps)
    throw DataError("coincident neighbor at point " + std::to_string(i));

  const double k = params.spring_length;
  const double p = params.decay_exponent;
  const double degree = static_cast<double>(nbrs.size());
  const double n = static_cast<double>(cloud.size());

  const double alpha = lambda_min * degree / k;
  const double beta = params.repulsion_scale * std::pow(k, p + 1.0) *
                      (degree * std::pow(lambda_min, 1.0 - p) +
                       n / std::pow(graph.radius, p - 1.0));
  return {alpha, beta};
}

TheoremReport verify_lower_bound(const PointCloud& cloud, const RecurrenceGraph& graph,
                                 const ForceParams& params) {
  if (graph.size() != static_cast<int>(cloud.size()))
    throw ConfigError("graph does not match the cloud");

  const int n = static_cast<int>(cloud.size());
  const ForceField forces = compute_forces(cloud, graph, params);

  TheoremReport report;
  report.points.resize(n);
  report.min_slack = std::numeric_limits<double>::infinity();
  report.min_cauchy_slack = std::numeric_limits<double>::infinity();

  for (int i = 0; i < n; ++i) {
    TheoremPointRecord& rec = report.points[i];
    rec.index = i;
    if (graph.neighbors[i].empty()) {
      ++report.skipped_isolated;
      continue;
    }
    const Vec3 offset = kappa(i, cloud, graph);
    rec.kappa_norm = offset.norm();
    rec.force_norm = forces[i].norm();
    const auto [alpha, beta] = theorem_bounds(i, cloud, graph, params);
    rec.alpha = alpha;
    rec.beta = beta;
    rec.bound = alpha * rec.kappa_norm - beta;
    if (rec.kappa_norm <= kKappaEps) {
      ++report.skipped_zero_kappa;  // asymmetry direction undefined
      continue;
    }
    const Vec3 direction = offset / rec.kappa_norm;
    rec.projection = std::fabs(dot(direction, forces[i]));
    rec.checked = true;
    ++report.checked;

    const double cauchy_slack = rec.force_norm - rec.projection;
    const double bound_slack = rec.projection - rec.bound;
    report.min_cauchy_slack = std::fmin(report.min_cauchy_slack, cauchy_slack);
    report.min_slack = std::fmin(report.min_slack, bound_slack);
    rec.satisfied = cauchy_slack >= -kCauchyTolerance && bound_slack >= -kBoundTolerance;
    if (!rec.satisfied) ++report.violations;
  }
  return report;
}

}  // namespace pointforce

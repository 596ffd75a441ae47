#pragma once

#include <vector>

#include "pointforce/dynamics.hpp"
#include "pointforce/geometry.hpp"
#include "pointforce/graph.hpp"

namespace pointforce {

// Mean position of a point's graph neighbors. Errors on isolated points.
Vec3 local_centroid(int i, const PointCloud& cloud, const RecurrenceGraph& graph);

// Offset of the point from its local centroid. The unit asymmetry direction
// n = kappa/||kappa|| is defined only when ||kappa|| > 1e-12.
Vec3 kappa(int i, const PointCloud& cloud, const RecurrenceGraph& graph);

// Constants of the force lower bound for point i:
//   alpha = lambda_min |N(i)| / K
//   beta  = C K^{p+1} (|N(i)| lambda_min^{1-p} + N / xi^{p-1})
// with lambda_min the minimum neighbor distance and xi the graph radius.
std::pair<double, double> theorem_bounds(int i, const PointCloud& cloud,
                                         const RecurrenceGraph& graph,
                                         const ForceParams& params);

struct TheoremPointRecord {
  int index = -1;
  double kappa_norm = 0.0;
  double force_norm = 0.0;
  double projection = 0.0;  // |n . f(i)|
  double alpha = 0.0;
  double beta = 0.0;
  double bound = 0.0;  // alpha ||kappa|| - beta
  bool checked = false;
  bool satisfied = true;
};

struct TheoremReport {
  std::vector<TheoremPointRecord> points;
  int checked = 0;
  int skipped_isolated = 0;
  int skipped_zero_kappa = 0;
  int violations = 0;
  double min_slack = 0.0;         // min over checked of projection - bound
  double min_cauchy_slack = 0.0;  // min over checked of ||f|| - projection
};

// Checks ||f(i)|| >= |n . f(i)| >= alpha ||kappa_i|| - beta for every point
// with at least one neighbor and ||kappa_i|| > 1e-12. Violations are recorded,
// not thrown. Tolerances: 1e-9 additive on the bound leg, 1e-12 on the
// Cauchy-Schwarz leg.
TheoremReport verify_lower_bound(const PointCloud& cloud, const RecurrenceGraph& graph,
                                 const ForceParams& params);

}  // namespace pointforce

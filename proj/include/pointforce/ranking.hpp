#pragma once

#include <cstdint>
#include <vector>

#include "pointforce/graph.hpp"
#include "pointforce/scoring.hpp"

namespace pointforce {

struct RankingParams {
  double gamma_pct = 3.0;   // percentage of points taken as seeds
  double delta_pct = 5.0;   // percentage of points retained by displacement rank
  double tau = 0.0;         // displacement threshold, scene units
  int iterations = 50;      // relaxation iterations for the optimizable set
};

// The ceil(gamma_pct/100 * N) highest-score indices, ties at the cutoff broken
// by lower index. Scores equal to 0 are never selected, so the result may be
// smaller than the quota. Returns sorted indices.
std::vector<int> select_seeds(const ScoreField& scores, double gamma_pct);

// Seeds plus all their graph neighbors, as a sorted set.
std::vector<int> build_optimizable_set(const std::vector<int>& seeds,
                                       const RecurrenceGraph& graph);

// Label 1 iff the point ranks within the top delta_pct% of N by descending
// displacement (ties toward lower index) and its displacement exceeds tau.
std::vector<std::uint8_t> classify(const std::vector<double>& displacements, double delta_pct,
                                   double tau);

}  // namespace pointforce

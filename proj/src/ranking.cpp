#include "pointforce/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pointforce/errors.hpp"

namespace pointforce {

namespace {

int quota_of(double pct, int n) {
  return static_cast<int>(std::ceil(pct / 100.0 * n));
}

}  // namespace

std::vector<int> select_seeds(const ScoreField& scores, double gamma_pct) {
  if (scores.stage == ScoreStage::raw_z)
    throw ConfigError("seed selection expects clipped or boundary-applied scores");
  if (!(gamma_pct > 0.0) || gamma_pct > 100.0)
    throw ConfigError("seed percentage must lie in (0, 100]");

  const int n = scores.size();
  const int quota = std::min(quota_of(gamma_pct, n), n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (scores.values[a] != scores.values[b]) return scores.values[a] > scores.values[b];
    return a < b;
  });

  std::vector<int> seeds;
  seeds.reserve(quota);
  for (int k = 0; k < quota; ++k) {
    if (scores.values[order[k]] == 0.0) break;  // zero scores are never seeds
    seeds.push_back(order[k]);
  }
  std::sort(seeds.begin(), seeds.end());
  return seeds;
}

std::vector<int> build_optimizable_set(const std::vector<int>& seeds,
                                       const RecurrenceGraph& graph) {
  std::vector<char> member(graph.size(), 0);
  for (int s : seeds) {
    member[s] = 1;
    for (int j : graph.neighbors[s]) member[j] = 1;
  }
  std::vector<int> set;
  for (int i = 0; i < graph.size(); ++i) {
    if (member[i]) set.push_back(i);
  }
  return set;
}

std::vector<std::uint8_t> classify(const std::vector<double>& displacements, double delta_pct,
                                   double tau) {
  if (!(delta_pct > 0.0) || delta_pct > 100.0)
    throw ConfigError("displacement percentage must lie in (0, 100]");
  if (tau < 0.0) throw ConfigError("displacement threshold must be nonnegative");

  const int n = static_cast<int>(displacements.size());
  const int quota = std::min(quota_of(delta_pct, n), n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (displacements[a] != displacements[b]) return displacements[a] > displacements[b];
    return a < b;
  });

  std::vector<std::uint8_t> labels(n, 0);
  for (int k = 0; k < quota; ++k) {
    if (displacements[order[k]] > tau) labels[order[k]] = 1;
  }
  return labels;
}

}  // namespace pointforce

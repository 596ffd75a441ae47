#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pointforce/ranking.hpp"

using namespace pointforce;

namespace {

ScoreField clipped(std::vector<double> values) {
  ScoreField s;
  s.stage = ScoreStage::clipped;
  s.values = std::move(values);
  return s;
}

}  // namespace

TEST_CASE("seed selection takes the arg-max under a quota of one") {
  const std::vector<int> seeds = select_seeds(clipped({0.1, 0.9, 0.5, 0.0}), 25.0);
  CHECK(seeds == std::vector<int>{1});
}

TEST_CASE("zero scores are never seeds") {
  CHECK(select_seeds(clipped({0.0, 0.0, 0.0}), 100.0).empty());
  // Quota 3 but only one positive score.
  CHECK(select_seeds(clipped({0.0, 0.0, 0.5}), 100.0) == std::vector<int>{2});
}

TEST_CASE("seed selection matches a full-sort oracle") {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> u(0.01, 2.0);
  std::vector<double> scores(1000);
  for (double& v : scores) v = u(rng);

  const std::vector<int> seeds = select_seeds(clipped(scores), 3.0);
  CHECK(seeds.size() == 30);

  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  std::vector<int> expected(order.begin(), order.begin() + 30);
  std::sort(expected.begin(), expected.end());
  CHECK(seeds == expected);
}

TEST_CASE("seed sets are invariant under positive scaling of scores") {
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::vector<double> scores(300);
  for (double& v : scores) v = u(rng);
  std::vector<double> scaled(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) scaled[i] = 7.25 * scores[i];
  CHECK(select_seeds(clipped(scores), 5.0) == select_seeds(clipped(scaled), 5.0));
}

TEST_CASE("ties at the seed cutoff break toward the lower index") {
  const std::vector<int> seeds = select_seeds(clipped({1.0, 2.0, 2.0, 2.0}), 50.0);
  CHECK(seeds == std::vector<int>{1, 2});
}

TEST_CASE("optimizable set is the union of seed neighborhoods") {
  RecurrenceGraph graph;
  graph.radius = 1.0;
  graph.neighbors = {{1}, {0, 2}, {1}, {}, {5}, {4}};

  CHECK(build_optimizable_set({}, graph).empty());
  CHECK(build_optimizable_set({3}, graph) == std::vector<int>{3});
  // Seeds 0 and 2 share neighbor 1; the union keeps one copy.
  CHECK(build_optimizable_set({0, 2}, graph) == std::vector<int>{0, 1, 2});
}

TEST_CASE("classification applies both the rank and distance thresholds") {
  const std::vector<double> displacement{0.0, 0.0, 0.1, 0.9, 1.0};
  const std::vector<std::uint8_t> labels = classify(displacement, 40.0, 0.35);
  CHECK(labels == std::vector<std::uint8_t>{0, 0, 0, 1, 1});
}

TEST_CASE("nothing is labeled when every displacement is at or below tau") {
  const std::vector<double> displacement{0.1, 0.2, 0.3};
  for (std::uint8_t l : classify(displacement, 100.0, 0.3)) CHECK(l == 0);
}

TEST_CASE("degenerate thresholds label exactly the moved points") {
  const std::vector<double> displacement{0.0, 0.5, 0.0, 1e-9};
  const std::vector<std::uint8_t> labels = classify(displacement, 100.0, 0.0);
  CHECK(labels == std::vector<std::uint8_t>{0, 1, 0, 1});
}

TEST_CASE("classification is monotone in tau and delta") {
  std::mt19937_64 rng(113);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> displacement(200);
  for (double& v : displacement) v = u(rng);

  // Raising tau never adds a label.
  for (double tau : {0.0, 0.2, 0.4, 0.8}) {
    const auto low = classify(displacement, 30.0, tau);
    const auto high = classify(displacement, 30.0, tau + 0.1);
    for (std::size_t i = 0; i < low.size(); ++i) {
      if (high[i]) CHECK(low[i]);
    }
  }
  // Raising delta never removes a label.
  for (double delta : {5.0, 20.0, 50.0}) {
    const auto narrow = classify(displacement, delta, 0.3);
    const auto wide = classify(displacement, delta + 10.0, 0.3);
    for (std::size_t i = 0; i < narrow.size(); ++i) {
      if (narrow[i]) CHECK(wide[i]);
    }
  }
}

TEST_CASE("label count respects the delta quota") {
  std::mt19937_64 rng(127);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> displacement(333);
  for (double& v : displacement) v = u(rng);
  const auto labels = classify(displacement, 7.0, 0.0);
  const long count = std::count(labels.begin(), labels.end(), std::uint8_t{1});
  CHECK(count <= static_cast<long>(std::ceil(0.07 * 333)));
}

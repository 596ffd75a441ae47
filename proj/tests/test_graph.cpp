#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "pointforce/graph.hpp"

using namespace pointforce;

TEST_CASE("no edge at exactly the radius, one edge strictly inside") {
  PointCloud at_radius{{0, 0, 0}, {2, 0, 0}};
  SpatialIndex index1(at_radius);
  const RecurrenceGraph g1 = build_recurrence_graph(at_radius, index1, 2.0);
  CHECK(g1.edge_count() == 0);

  PointCloud inside{{0, 0, 0}, {1, 0, 0}};
  SpatialIndex index2(inside);
  const RecurrenceGraph g2 = build_recurrence_graph(inside, index2, 2.0);
  CHECK(g2.edge_count() == 1);
  CHECK(g2.neighbors[0] == std::vector<int>{1});
  CHECK(g2.neighbors[1] == std::vector<int>{0});
}

TEST_CASE("graph matches the dense Heaviside oracle") {
  const PointCloud cloud = oracle::random_cloud(500, 31);
  const SpatialIndex index(cloud);
  const double xi = 0.12;
  const RecurrenceGraph graph = build_recurrence_graph(cloud, index, xi);
  const auto dense = oracle::dense_adjacency(cloud, xi);
  for (int i = 0; i < 500; ++i) {
    std::vector<int> expected;
    for (int j = 0; j < 500; ++j) {
      if (dense[i][j]) expected.push_back(j);
    }
    CHECK(graph.neighbors[i] == expected);
  }
}

TEST_CASE("graph has no self loops and is symmetric") {
  const PointCloud cloud = oracle::random_cloud(300, 37);
  const SpatialIndex index(cloud);
  const RecurrenceGraph graph = build_recurrence_graph(cloud, index, 0.2);
  for (int i = 0; i < graph.size(); ++i) {
    CHECK(!std::binary_search(graph.neighbors[i].begin(), graph.neighbors[i].end(), i));
    for (int j : graph.neighbors[i]) {
      CHECK(std::binary_search(graph.neighbors[j].begin(), graph.neighbors[j].end(), i));
    }
  }
}

TEST_CASE("edge sets grow monotonically with the radius") {
  const PointCloud cloud = oracle::random_cloud(200, 41);
  const SpatialIndex index(cloud);
  const RecurrenceGraph small = build_recurrence_graph(cloud, index, 0.1);
  const RecurrenceGraph large = build_recurrence_graph(cloud, index, 0.25);
  for (int i = 0; i < small.size(); ++i) {
    for (int j : small.neighbors[i]) {
      CHECK(std::binary_search(large.neighbors[i].begin(), large.neighbors[i].end(), j));
    }
  }
}

TEST_CASE("select_radius scales the mean nearest-neighbor distance") {
  PointCloud grid;
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) grid.push_back({static_cast<double>(x), static_cast<double>(y), 0});
  CHECK(select_radius(grid, 2.0) == doctest::Approx(2.0).epsilon(1e-12));

  PointCloud pair{{0, 0, 0}, {3, 0, 0}};
  CHECK(select_radius(pair, 1.5) == doctest::Approx(4.5).epsilon(1e-12));

  const PointCloud cloud = oracle::random_cloud(150, 43);
  CHECK(select_radius(cloud, 2.5) ==
        doctest::Approx(2.5 * oracle::brute_mean_nn(cloud)).epsilon(1e-12));
}

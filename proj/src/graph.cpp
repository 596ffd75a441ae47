#include "pointforce/graph.hpp"

#include "pointforce/errors.hpp"
#include "pointforce/preprocess.hpp"

namespace pointforce {

std::size_t RecurrenceGraph::edge_count() const {
  std::size_t half_edges = 0;
  for (const auto& list : neighbors) half_edges += list.size();
  return half_edges / 2;
}

RecurrenceGraph build_recurrence_graph(const PointCloud& cloud, const SpatialIndex& index,
                                       double radius) {
  if (!(radius > 0.0)) throw ConfigError("graph radius must be positive");
  if (index.size() != static_cast<int>(cloud.size()))
    throw ConfigError("spatial index does not match the cloud");

  RecurrenceGraph graph;
  graph.radius = radius;
  graph.neighbors.resize(cloud.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < static_cast<int>(cloud.size()); ++i) {
    graph.neighbors[i] = index.radius_neighbors(i, radius);
  }
  return graph;
}

double select_radius(const PointCloud& cloud, double multiplier) {
  if (!(multiplier > 0.0)) throw ConfigError("radius multiplier must be positive");
  return multiplier * mean_nn_distance(cloud);
}

}  // namespace pointforce

#pragma once

#include <cstddef>
#include <vector>

#include "pointforce/geometry.hpp"
#include "pointforce/spatial_index.hpp"

namespace pointforce {

// Radius graph over the cloud: i and j are adjacent iff ||v_i - v_j|| < radius.
// No self loops; adjacency is symmetric; lists are sorted ascending.
struct RecurrenceGraph {
  std::vector<std::vector<int>> neighbors;
  double radius = 0.0;

  int size() const { return static_cast<int>(neighbors.size()); }
  int degree(int i) const { return static_cast<int>(neighbors[i].size()); }
  std::size_t edge_count() const;
};

RecurrenceGraph build_recurrence_graph(const PointCloud& cloud, const SpatialIndex& index,
                                       double radius);

// multiplier times the mean nearest-neighbor distance of the cloud.
double select_radius(const PointCloud& cloud, double multiplier);

}  // namespace pointforce

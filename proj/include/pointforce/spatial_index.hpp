#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "pointforce/geometry.hpp"

namespace pointforce {

// Uniform hashed grid for exact radius queries. Neighborhoods use the strict
// inequality ||v_j - v_i|| < r; a point at exactly distance r is excluded.
//
// The index keeps a reference to the cloud it was built on; the cloud must
// outlive the index. Queries on a built index are safe from multiple threads.
class SpatialIndex {
 public:
  // Cell size picked from the bounding box and point count.
  explicit SpatialIndex(const PointCloud& cloud);
  SpatialIndex(const PointCloud& cloud, double cell_size);

  // Indices j != i with ||v_j - v_i|| < radius, ascending.
  std::vector<int> radius_neighbors(int i, double radius) const;
  // All indices with ||v_j - q|| < radius, ascending.
  std::vector<int> radius_neighbors(const Vec3& query, double radius) const;

  // Exact nearest-neighbor distance via expanding radius search.
  // Requires at least two points in the cloud.
  double nearest_neighbor_distance(int i) const;

  int size() const { return static_cast<int>(cloud_->size()); }
  double cell_size() const { return cell_; }
  const PointCloud& cloud() const { return *cloud_; }

 private:
  std::int64_t key_of(const Vec3& p) const;
  void gather(const Vec3& query, double radius, int exclude, std::vector<int>& out) const;

  const PointCloud* cloud_;
  Vec3 origin_{};
  double cell_ = 1.0;
  std::unordered_map<std::int64_t, std::vector<int>> buckets_;
};

}  // namespace pointforce

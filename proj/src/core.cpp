#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pointforce/errors.hpp"
#include "pointforce/geometry.hpp"
#include "pointforce/preprocess.hpp"
#include "pointforce/spatial_index.hpp"

namespace pointforce {

Aabb bounding_box(const PointCloud& cloud) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Aabb box{{kInf, kInf, kInf}, {-kInf, -kInf, -kInf}};
  for (const Vec3& p : cloud) {
    box.lo.x = std::fmin(box.lo.x, p.x);
    box.lo.y = std::fmin(box.lo.y, p.y);
    box.lo.z = std::fmin(box.lo.z, p.z);
    box.hi.x = std::fmax(box.hi.x, p.x);
    box.hi.y = std::fmax(box.hi.y, p.y);
    box.hi.z = std::fmax(box.hi.z, p.z);
  }
  return box;
}

PointCloud Transform::apply(const PointCloud& cloud) const {
  PointCloud out;
  out.reserve(cloud.size());
  for (const Vec3& p : cloud) out.push_back(apply(p));
  return out;
}

PointCloud Transform::invert(const PointCloud& cloud) const {
  PointCloud out;
  out.reserve(cloud.size());
  for (const Vec3& p : cloud) out.push_back(invert(p));
  return out;
}

namespace {

double heuristic_cell(const PointCloud& cloud) {
  if (cloud.empty()) return 1.0;
  const double extent = bounding_box(cloud).max_extent();
  if (extent <= 0.0) return 1.0;
  const double divisions = std::ceil(std::cbrt(static_cast<double>(cloud.size())));
  return extent / std::fmax(divisions, 1.0);
}

// 21 bits per axis with a half-range offset so query cells below the origin
// still pack uniquely.
std::int64_t pack_cell(long cx, long cy, long cz) {
  constexpr long kOffset = 1L << 20;
  return ((static_cast<std::int64_t>(cx + kOffset) & 0x1FFFFF) << 42) |
         ((static_cast<std::int64_t>(cy + kOffset) & 0x1FFFFF) << 21) |
         (static_cast<std::int64_t>(cz + kOffset) & 0x1FFFFF);
}

}  // namespace

SpatialIndex::SpatialIndex(const PointCloud& cloud) : SpatialIndex(cloud, heuristic_cell(cloud)) {}

SpatialIndex::SpatialIndex(const PointCloud& cloud, double cell_size) : cloud_(&cloud) {
  if (!(cell_size > 0.0)) throw ConfigError("spatial index cell size must be positive");
  cell_ = cell_size;
  origin_ = cloud.empty() ? Vec3{} : bounding_box(cloud).lo;
  buckets_.reserve(cloud.size());
  for (int i = 0; i < static_cast<int>(cloud.size()); ++i) {
    buckets_[key_of(cloud[i])].push_back(i);
  }
}

std::int64_t SpatialIndex::key_of(const Vec3& p) const {
  const long cx = static_cast<long>(std::floor((p.x - origin_.x) / cell_));
  const long cy = static_cast<long>(std::floor((p.y - origin_.y) / cell_));
  const long cz = static_cast<long>(std::floor((p.z - origin_.z) / cell_));
  return pack_cell(cx, cy, cz);
}

std::vector<int> SpatialIndex::radius_neighbors(int i, double radius) const {
  if (i < 0 || i >= size()) throw ConfigError("point index out of range");
  std::vector<int> out;
  gather((*cloud_)[i], radius, i, out);
  return out;
}

std::vector<int> SpatialIndex::radius_neighbors(const Vec3& query, double radius) const {
  std::vector<int> out;
  gather(query, radius, -1, out);
  return out;
}

void SpatialIndex::gather(const Vec3& query, double radius, int exclude,
                          std::vector<int>& out) const {
  if (!(radius > 0.0)) throw ConfigError("query radius must be positive");
  const double r2 = radius * radius;
  const PointCloud& pts = *cloud_;
  const auto cell_coord = [this](double v, double o) {
    return static_cast<long>(std::floor((v - o) / cell_));
  };
  const long cx0 = cell_coord(query.x - radius, origin_.x);
  const long cx1 = cell_coord(query.x + radius, origin_.x);
  const long cy0 = cell_coord(query.y - radius, origin_.y);
  const long cy1 = cell_coord(query.y + radius, origin_.y);
  const long cz0 = cell_coord(query.z - radius, origin_.z);
  const long cz1 = cell_coord(query.z + radius, origin_.z);
  for (long cx = cx0; cx <= cx1; ++cx) {
    for (long cy = cy0; cy <= cy1; ++cy) {
      for (long cz = cz0; cz <= cz1; ++cz) {
        auto it = buckets_.find(pack_cell(cx, cy, cz));
        if (it == buckets_.end()) continue;
        for (int j : it->second) {
          if (j == exclude) continue;
          if (squared_distance(pts[j], query) < r2) out.push_back(j);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
}

double SpatialIndex::nearest_neighbor_distance(int i) const {
  if (size() < 2) throw DataError("nearest-neighbor distance requires at least two points");
  if (i < 0 || i >= size()) throw ConfigError("point index out of range");
  const Vec3& q = (*cloud_)[i];
  const PointCloud& pts = *cloud_;
  const double max_radius = 2.0 * bounding_box(pts).extent().norm() + cell_;
  double radius = cell_;
  while (radius <= max_radius) {
    // Every point strictly inside `radius` is gathered, so a non-empty result
    // necessarily contains the true nearest neighbor.
    std::vector<int> found;
    gather(q, radius, i, found);
    if (!found.empty()) {
      double best = std::numeric_limits<double>::infinity();
      for (int j : found) best = std::fmin(best, squared_distance(pts[j], q));
      return std::sqrt(best);
    }
    radius *= 2.0;
  }
  // Direct scan fallback for pathological geometry.
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < size(); ++j) {
    if (j != i) best = std::fmin(best, squared_distance(pts[j], q));
  }
  return std::sqrt(best);
}

std::pair<PointCloud, std::vector<int>> fps_downsample(const PointCloud& cloud, int target,
                                                       int start_index) {
  const int n = static_cast<int>(cloud.size());
  if (n < 1) throw DataError("cannot sample an empty cloud");
  if (target < 1) throw ConfigError("sampling target must be positive");
  if (target > n) throw ConfigError("target exceeds cloud size");
  if (start_index < 0 || start_index >= n) throw ConfigError("start index out of range");

  std::vector<double> min_d2(n, std::numeric_limits<double>::infinity());
  std::vector<char> taken(n, 0);
  std::vector<int> selected;
  selected.reserve(target);

  int current = start_index;
  for (int k = 0; k < target; ++k) {
    taken[current] = 1;
    selected.push_back(current);
    if (k + 1 == target) break;
    // Fold the newly selected point into the min-distance field, then take the
    // farthest remaining point; the ascending scan breaks ties downward.
    int next = -1;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double d2 = squared_distance(cloud[i], cloud[current]);
      if (d2 < min_d2[i]) min_d2[i] = d2;
      if (min_d2[i] > best) {
        best = min_d2[i];
        next = i;
      }
    }
    current = next;
  }

  PointCloud sampled;
  sampled.reserve(selected.size());
  for (int idx : selected) sampled.push_back(cloud[idx]);
  return {std::move(sampled), std::move(selected)};
}

std::pair<PointCloud, Transform> rescale_to_cube(const PointCloud& cloud, double edge) {
  if (!(edge > 0.0)) throw ConfigError("cube edge must be positive");
  if (cloud.size() < 2) throw DataError("zero extent");
  const Aabb box = bounding_box(cloud);
  const double extent = box.max_extent();
  if (!(extent > 0.0)) throw DataError("zero extent");

  Transform t;
  t.scale = edge / extent;
  const Vec3 target{edge / 2.0, edge / 2.0, edge / 2.0};
  t.translation = target - box.center() * t.scale;
  return {t.apply(cloud), t};
}

double mean_nn_distance(const PointCloud& cloud) {
  const int n = static_cast<int>(cloud.size());
  if (n < 2) throw DataError("mean nearest-neighbor distance requires at least two points");
  const SpatialIndex index(cloud);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += index.nearest_neighbor_distance(i);
  return sum / n;
}

}  // namespace pointforce

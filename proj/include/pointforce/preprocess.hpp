#pragma once

#include <utility>
#include <vector>

#include "pointforce/geometry.hpp"

namespace pointforce {

// Farthest point sampling. Starting from start_index, each successive point
// maximizes the minimum distance to the already selected set; ties break
// toward the lowest original index. The sampled cloud is in visitation order
// and the second member maps each sampled point to its original index.
std::pair<PointCloud, std::vector<int>> fps_downsample(const PointCloud& cloud, int target,
                                                       int start_index = 0);

// Uniformly rescales so the longest bounding-box extent equals edge and the
// box center lands at (edge/2, edge/2, edge/2). Aspect ratio is preserved.
std::pair<PointCloud, Transform> rescale_to_cube(const PointCloud& cloud, double edge);

// Mean over all points of the distance to their nearest neighbor.
double mean_nn_distance(const PointCloud& cloud);

}  // namespace pointforce

#pragma once

#include <vector>

#include "pointforce/dynamics.hpp"
#include "pointforce/geometry.hpp"
#include "pointforce/graph.hpp"
#include "pointforce/spatial_index.hpp"

namespace pointforce {

enum class ScoreStage { raw_z, clipped, boundary_applied };

struct ScoreField {
  std::vector<double> values;
  ScoreStage stage = ScoreStage::raw_z;

  int size() const { return static_cast<int>(values.size()); }
};

struct BoundaryParams {
  double angle_gap_threshold = 1.5707963267948966;  // pi/2
  bool enabled = false;
};

// Z-score of each point's energy against the window {i} + neighbors(i, norm_radius),
// using the population standard deviation. Windows with sigma < 1e-12 score 0.
ScoreField local_zscore(const EnergyField& energy, const PointCloud& cloud,
                        const SpatialIndex& index, double norm_radius);

// Elementwise min(max(0, x), 2).
ScoreField clipped_relu(const ScoreField& scores);

// Angle-criterion boundary extraction for open surfaces: fit a tangent plane
// to each point's graph neighborhood by principal-axis analysis, project the
// neighbors, and mark the point as boundary when the largest polar-angle gap
// exceeds the threshold. Points with fewer than 3 neighbors are boundary by
// convention. Returns sorted indices.
std::vector<int> detect_boundary_points(const PointCloud& cloud, const SpatialIndex& index,
                                        const RecurrenceGraph& graph,
                                        const BoundaryParams& params);

// Overwrites the score of every boundary point and every graph neighbor of a
// boundary point with 0.25. Idempotent.
ScoreField apply_boundary_condition(const ScoreField& scores, const std::vector<int>& boundary,
                                    const RecurrenceGraph& graph);

}  // namespace pointforce

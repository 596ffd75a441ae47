#pragma once

#include <utility>
#include <vector>

#include "pointforce/geometry.hpp"
#include "pointforce/graph.hpp"

namespace pointforce {

// Sign convention for the combined force. `paper` keeps the printed signs of
// the source model (all-pairs term pulls inward, edge term pushes outward);
// `classical` negates the sum, giving the usual spring-electrical behaviour
// where edges contract and charges repel. Energies and force magnitudes are
// identical under both; only the displacement direction differs.
enum class SignConvention { paper, classical };

struct ForceParams {
  double repulsion_scale = 0.2;  // scaling factor of the all-pairs term
  double spring_length = 1.0;    // natural spring length
  double decay_exponent = 2.0;   // repulsion decay rate (> 0)
  double step = 0.1;             // displacement per position update
  SignConvention sign = SignConvention::classical;
  double coincident_eps = 1e-9;  // pairs closer than this are an error
  double force_eps = 1e-12;      // forces below this leave a point in place
};

using ForceField = std::vector<Vec3>;

struct EnergyField {
  std::vector<double> values;  // per point ||f(i)||^2
  double total = 0.0;

  int size() const { return static_cast<int>(values.size()); }
};

// All-pairs term: sum over j != i of -(C K^{p+1} / ||v_i-v_j||^p) (v_i-v_j).
// Always evaluated with the printed signs, independent of params.sign.
Vec3 repulsive_force(int i, const PointCloud& cloud, const ForceParams& params);

// Edge term: sum over graph neighbors of (||v_i-v_j|| / K) (v_i-v_j).
Vec3 attractive_force(int i, const PointCloud& cloud, const RecurrenceGraph& graph,
                      const ForceParams& params);

// Repulsive sum plus attractive sum, in that order, then the sign convention.
Vec3 net_force(int i, const PointCloud& cloud, const RecurrenceGraph& graph,
               const ForceParams& params);

// net_force for every point. Deterministic regardless of thread count:
// each point's sum runs in a fixed order.
ForceField compute_forces(const PointCloud& cloud, const RecurrenceGraph& graph,
                          const ForceParams& params);

EnergyField energy_field(const ForceField& forces);

// Iterative relaxation of the movable subset. Each iteration computes forces
// on a snapshot of the current positions, then moves every movable point with
// ||f|| > force_eps by step * f/||f|| simultaneously. Graph edges stay fixed.
// Returns the final positions and per-point displacement magnitudes
// (exactly 0 for non-movable points).
std::pair<PointCloud, std::vector<double>> update_positions(const PointCloud& cloud,
                                                            const std::vector<int>& movable,
                                                            const RecurrenceGraph& graph,
                                                            const ForceParams& params,
                                                            int iterations);

}  // namespace pointforce

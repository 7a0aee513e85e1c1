#pragma once

#include <vector>

#include "offmoo/types.hpp"

namespace offmoo {

/// Ordered partition of {0..N-1} into fronts. `keys[i]` is the rank value
/// that produced `fronts[i]`: whole numbers for plain non-dominated
/// sorting, half-integers for the dual-ranking reconstruction. Keys are
/// strictly increasing and no front is empty.
struct FrontPartition {
  std::vector<std::vector<int>> fronts;
  std::vector<Real> keys;

  int n_fronts() const { return static_cast<int>(fronts.size()); }
};

/// Fast non-dominated sorting (the reference O(MN^2) procedure).
/// Feasibility-first dominance applies whenever constraints are present;
/// with no constraints it is plain Pareto dominance.
FrontPartition non_dominated_sort(const std::vector<Evaluation>& evals);

/// Front index per individual, taken from non_dominated_sort.
std::vector<int> compute_rank(const std::vector<Evaluation>& evals);

/// Ranks each individual under the original and the adjusted evaluations
/// separately, averages the two ranks, and regroups individuals by equal
/// average into the hybrid partition, ascending.
FrontPartition dual_rank(const std::vector<Evaluation>& evals_original,
                         const std::vector<Evaluation>& evals_adjusted);

/// NSGA-II crowding distance of each front member, computed on the given
/// objective vectors (indexed by the same population indices as `front`).
/// Boundary members and fronts of size <= 2 get +infinity; an objective
/// whose front extent is zero contributes nothing.
std::vector<Real> crowding_distance(
    const std::vector<int>& front,
    const std::vector<ObjectiveVector>& objectives);

}  // namespace offmoo

#pragma once

#include <stdexcept>

#include "offmoo/types.hpp"

namespace offmoo {

/// Pareto dominance under minimization: a <= b componentwise and a < b in
/// at least one component. Throws std::invalid_argument on length mismatch.
inline bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dominates: objective length mismatch");
  }
  bool strictly_better = false;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
    if (a[k] < b[k]) strictly_better = true;
  }
  return strictly_better;
}

/// Feasibility-first dominance: a feasible solution beats any infeasible
/// one, two infeasible solutions compare by total violation (smaller
/// wins), two feasible solutions compare by Pareto dominance.
inline bool constrained_dominates(const Evaluation& a, const Evaluation& b) {
  if (a.objectives.size() != b.objectives.size() ||
      a.constraint_violations.size() != b.constraint_violations.size()) {
    throw std::invalid_argument("constrained_dominates: shape mismatch");
  }
  const bool a_feasible = a.feasible();
  const bool b_feasible = b.feasible();
  if (a_feasible != b_feasible) return a_feasible;
  if (!a_feasible) return a.violation_sum() < b.violation_sum();
  return dominates(a.objectives, b.objectives);
}

}  // namespace offmoo

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace offmoo {

template <class T>
using MatrixT = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using VectorT = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using Real = double;
using Mat = MatrixT<Real>;
using Vec = VectorT<Real>;

/// Point in decision space; length D, componentwise inside the owning
/// problem's bounds.
using DecisionVector = Vec;

/// Point in objective space; length K, minimization convention.
using ObjectiveVector = Vec;

/// Objectives plus non-negative constraint violation magnitudes.
/// A violation of 0 means the constraint is satisfied.
struct Evaluation {
  ObjectiveVector objectives;
  Vec constraint_violations;  // length C >= 0, each entry >= 0

  bool feasible() const { return violation_sum() == Real{0}; }
  Real violation_sum() const {
    return constraint_violations.size() == 0 ? Real{0}
                                             : constraint_violations.sum();
  }
};

/// One population member. Both evaluations refer to the same x and share
/// constraint violations; only the objectives differ (original vs
/// uncertainty-adjusted surrogate fitness).
struct Individual {
  DecisionVector x;
  Evaluation eval_original;
  Evaluation eval_adjusted;
  std::optional<Real> rank_hybrid;  // multiple of 0.5 when set
  std::optional<Real> crowding;     // +inf allowed
};

/// Index-addressable, stably ordered.
using Population = std::vector<Individual>;

/// A benchmark definition. `evaluate_true` is the expensive ground truth
/// (deterministic); `constraint_violations` exposes the analytic
/// constraints alone so the optimizer can check feasibility without
/// touching the true objectives.
struct Problem {
  std::string name;
  int dim = 0;            // D
  int n_objectives = 0;   // K >= 2
  int n_constraints = 0;  // C >= 0
  Vec lower;              // length D, lower[i] < upper[i]
  Vec upper;
  std::function<Evaluation(const DecisionVector&)> evaluate_true;
  std::function<Vec(const DecisionVector&)> constraint_violations;
};

struct DatasetProvenance {
  std::string problem;
  std::uint64_t seed = 0;
  int n = 0;
};

/// The fixed pre-collected samples surrogates are fitted on. Immutable
/// after construction; Y row i is evaluate_true(X row i).objectives.
struct OfflineDataset {
  Mat X;  // n x D
  Mat Y;  // n x K
  DatasetProvenance provenance;

  int n() const { return static_cast<int>(X.rows()); }
};

}  // namespace offmoo

#pragma once

#include <cstdint>
#include <vector>

#include "offmoo/rng.hpp"
#include "offmoo/sampling.hpp"
#include "offmoo/surrogate.hpp"
#include "offmoo/types.hpp"

namespace offmoo {

struct EngineConfig {
  int population = 100;       // N
  int generations = 100;      // G; N*G = 10,000 under defaults
  Real crossover_prob = 1.0;
  Real eta_crossover = 20.0;
  Real mutation_prob = -1.0;  // <= 0 means 1/D
  Real eta_mutation = 20.0;
  Real tau = 0.9;
  std::uint64_t seed = 1;
};

struct GenerationSummary {
  int generation = 0;
  Vec min_original;   // per objective, over the population
  Vec mean_original;
  int feasible_count = 0;
};

struct RunResult {
  /// Final survivors with their surrogate evaluations (original and
  /// adjusted) still attached.
  Population final_population;
  /// True evaluations of the final population, computed once after the
  /// generational loop; the search itself never touches the true
  /// objectives.
  std::vector<Evaluation> real_evaluations;
  std::vector<GenerationSummary> history;
};

/// Standard SBX: per-variable spread factor from the eta_c polynomial
/// distribution, 0.5 per-variable exchange probability, children clipped
/// to bounds. With probability 1 - prob the parents pass through
/// unchanged.
std::pair<DecisionVector, DecisionVector> sbx_crossover(
    const DecisionVector& parent1, const DecisionVector& parent2,
    const Vec& lower, const Vec& upper, Real eta, Real prob, Rng& rng);

/// Bounded polynomial mutation with index eta_m, applied per variable
/// with probability prob.
DecisionVector polynomial_mutation(const DecisionVector& x, const Vec& lower,
                                   const Vec& upper, Real eta, Real prob,
                                   Rng& rng);

/// Binary tournament on (rank_hybrid asc, crowding desc), full ties
/// resolved uniformly at random. Requires ranks and crowding to be set.
int tournament_select(const Population& pop, Rng& rng);

/// Dual-ranking survival: hybrid fronts admitted in ascending average
/// rank, the splitting front truncated by descending crowding distance
/// (computed on the original objectives within that hybrid front).
/// Survivors come back with rank_hybrid and crowding assigned.
Population survival(const Population& merged, int n_survivors);

/// Assigns rank_hybrid and crowding to every member in place (the
/// no-truncation case of survival, used for the initial population).
void assign_hybrid_ranks(Population& pop);

/// Full offline run: dataset -> surrogate fit -> NSGA-II loop with
/// dual-ranking survival -> one final real evaluation.
RunResult run(const Problem& problem, SurrogateKind kind,
              const EngineConfig& cfg, const SamplingConfig& sampling_cfg,
              const TrainConfig& train_cfg = {});

}  // namespace offmoo

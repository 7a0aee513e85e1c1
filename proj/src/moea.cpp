#include "offmoo/moea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "offmoo/fitness.hpp"
#include "offmoo/ranking.hpp"

namespace offmoo {

std::pair<DecisionVector, DecisionVector> sbx_crossover(
    const DecisionVector& parent1, const DecisionVector& parent2,
    const Vec& lower, const Vec& upper, Real eta, Real prob, Rng& rng) {
  DecisionVector child1 = parent1;
  DecisionVector child2 = parent2;
  if (rng.uniform01() >= prob) return {child1, child2};
  for (Eigen::Index i = 0; i < parent1.size(); ++i) {
    if (rng.uniform01() >= 0.5) continue;  // per-variable exchange
    const Real u = rng.uniform01();
    const Real beta =
        u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                 : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
    const Real x1 = parent1[i], x2 = parent2[i];
    child1[i] = 0.5 * ((1.0 + beta) * x1 + (1.0 - beta) * x2);
    child2[i] = 0.5 * ((1.0 - beta) * x1 + (1.0 + beta) * x2);
    child1[i] = std::clamp(child1[i], lower[i], upper[i]);
    child2[i] = std::clamp(child2[i], lower[i], upper[i]);
  }
  return {child1, child2};
}

DecisionVector polynomial_mutation(const DecisionVector& x, const Vec& lower,
                                   const Vec& upper, Real eta, Real prob,
                                   Rng& rng) {
  DecisionVector mutated = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (rng.uniform01() >= prob) continue;
    const Real range = upper[i] - lower[i];
    if (range <= 0) continue;
    const Real delta1 = (x[i] - lower[i]) / range;
    const Real delta2 = (upper[i] - x[i]) / range;
    const Real u = rng.uniform01();
    const Real exponent = 1.0 / (eta + 1.0);
    Real delta_q;
    if (u < 0.5) {
      const Real val =
          2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - delta1, eta + 1.0);
      delta_q = std::pow(val, exponent) - 1.0;
    } else {
      const Real val = 2.0 * (1.0 - u) +
                       2.0 * (u - 0.5) * std::pow(1.0 - delta2, eta + 1.0);
      delta_q = 1.0 - std::pow(val, exponent);
    }
    mutated[i] = std::clamp(x[i] + delta_q * range, lower[i], upper[i]);
  }
  return mutated;
}

int tournament_select(const Population& pop, Rng& rng) {
  const auto n = static_cast<std::uint64_t>(pop.size());
  const int a = static_cast<int>(rng.below(n));
  const int b = static_cast<int>(rng.below(n));
  const Individual& ia = pop[static_cast<std::size_t>(a)];
  const Individual& ib = pop[static_cast<std::size_t>(b)];
  if (!ia.rank_hybrid || !ib.rank_hybrid || !ia.crowding || !ib.crowding) {
    throw std::logic_error("tournament_select: ranks or crowding missing");
  }
  if (*ia.rank_hybrid != *ib.rank_hybrid) {
    return *ia.rank_hybrid < *ib.rank_hybrid ? a : b;
  }
  if (*ia.crowding != *ib.crowding) {
    return *ia.crowding > *ib.crowding ? a : b;
  }
  return rng.uniform01() < 0.5 ? a : b;
}

namespace {

std::vector<ObjectiveVector> original_objectives(const Population& pop) {
  std::vector<ObjectiveVector> objectives;
  objectives.reserve(pop.size());
  for (const auto& ind : pop) objectives.push_back(ind.eval_original.objectives);
  return objectives;
}

FrontPartition hybrid_partition(const Population& pop) {
  std::vector<Evaluation> ori, adj;
  ori.reserve(pop.size());
  adj.reserve(pop.size());
  for (const auto& ind : pop) {
    ori.push_back(ind.eval_original);
    adj.push_back(ind.eval_adjusted);
  }
  return dual_rank(ori, adj);
}

}  // namespace

void assign_hybrid_ranks(Population& pop) {
  const FrontPartition partition = hybrid_partition(pop);
  const auto objectives = original_objectives(pop);
  for (int f = 0; f < partition.n_fronts(); ++f) {
    const auto& front = partition.fronts[static_cast<std::size_t>(f)];
    const auto distances = crowding_distance(front, objectives);
    for (std::size_t i = 0; i < front.size(); ++i) {
      auto& ind = pop[static_cast<std::size_t>(front[i])];
      ind.rank_hybrid = partition.keys[static_cast<std::size_t>(f)];
      ind.crowding = distances[i];
    }
  }
}

Population survival(const Population& merged, int n_survivors) {
  if (n_survivors <= 0 ||
      n_survivors > static_cast<int>(merged.size())) {
    throw std::invalid_argument("survival: bad survivor count");
  }
  const FrontPartition partition = hybrid_partition(merged);
  const auto objectives = original_objectives(merged);

  Population survivors;
  survivors.reserve(static_cast<std::size_t>(n_survivors));
  for (int f = 0; f < partition.n_fronts() &&
                  static_cast<int>(survivors.size()) < n_survivors;
       ++f) {
    const auto& front = partition.fronts[static_cast<std::size_t>(f)];
    const Real key = partition.keys[static_cast<std::size_t>(f)];
    const auto distances = crowding_distance(front, objectives);
    const int room = n_survivors - static_cast<int>(survivors.size());

    std::vector<std::size_t> order(front.size());
    for (std::size_t i = 0; i < front.size(); ++i) order[i] = i;
    if (static_cast<int>(front.size()) > room) {
      // Splitting front: keep the most spread-out members.
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (distances[a] != distances[b]) return distances[a] > distances[b];
        return front[a] < front[b];
      });
      order.resize(static_cast<std::size_t>(room));
    }
    for (std::size_t i : order) {
      Individual ind = merged[static_cast<std::size_t>(front[i])];
      ind.rank_hybrid = key;
      ind.crowding = distances[i];
      survivors.push_back(std::move(ind));
    }
  }
  return survivors;
}

namespace {

Individual evaluate_with_surrogates(const Problem& problem,
                                    const SurrogateSet& set,
                                    DecisionVector x,
                                    std::uint64_t sample_seed) {
  const auto preds = predict_all(set, x, sample_seed);
  const FitnessPair pair = make_fitness_pair(preds, set.tau);
  const Vec violations = problem.constraint_violations(x);
  Individual ind;
  ind.x = std::move(x);
  ind.eval_original = Evaluation{pair.original, violations};
  ind.eval_adjusted = Evaluation{pair.adjusted, violations};
  return ind;
}

GenerationSummary summarize(const Population& pop, int generation) {
  GenerationSummary s;
  s.generation = generation;
  const auto k = pop.front().eval_original.objectives.size();
  s.min_original = Vec::Constant(k, std::numeric_limits<Real>::infinity());
  s.mean_original = Vec::Zero(k);
  for (const auto& ind : pop) {
    s.min_original = s.min_original.cwiseMin(ind.eval_original.objectives);
    s.mean_original += ind.eval_original.objectives;
    if (ind.eval_original.feasible()) ++s.feasible_count;
  }
  s.mean_original /= static_cast<Real>(pop.size());
  return s;
}

}  // namespace

RunResult run(const Problem& problem, SurrogateKind kind,
              const EngineConfig& cfg, const SamplingConfig& sampling_cfg,
              const TrainConfig& train_cfg) {
  const OfflineDataset dataset = build_offline_dataset(problem, sampling_cfg);
  const SurrogateSet surrogates =
      fit_surrogate_set(kind, dataset, train_cfg, cfg.tau);

  const int n = cfg.population;
  const Real mutation_prob = cfg.mutation_prob > 0
                                 ? cfg.mutation_prob
                                 : 1.0 / static_cast<Real>(problem.dim);
  Rng rng(derive_seed(cfg.seed, 0xF00D, 0xBEEF));  // variation stream

  // Fresh LHS over the bounds, seeded by the run (independent of the
  // offline dataset's design).
  const Mat initial = lhs(n, problem.lower, problem.upper, cfg.seed);
  Population pop;
  pop.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    pop.push_back(evaluate_with_surrogates(
        problem, surrogates, initial.row(i).transpose(),
        derive_seed(cfg.seed, 0, static_cast<std::uint64_t>(i))));
  }
  assign_hybrid_ranks(pop);

  RunResult result;
  result.history.push_back(summarize(pop, 0));
  for (int gen = 1; gen <= cfg.generations; ++gen) {
    Population offspring;
    offspring.reserve(static_cast<std::size_t>(n));
    while (static_cast<int>(offspring.size()) < n) {
      const int pa = tournament_select(pop, rng);
      const int pb = tournament_select(pop, rng);
      auto [c1, c2] = sbx_crossover(pop[static_cast<std::size_t>(pa)].x,
                                    pop[static_cast<std::size_t>(pb)].x,
                                    problem.lower, problem.upper,
                                    cfg.eta_crossover, cfg.crossover_prob, rng);
      for (DecisionVector* child : {&c1, &c2}) {
        if (static_cast<int>(offspring.size()) >= n) break;
        DecisionVector mutated =
            polynomial_mutation(*child, problem.lower, problem.upper,
                                cfg.eta_mutation, mutation_prob, rng);
        offspring.push_back(evaluate_with_surrogates(
            problem, surrogates, std::move(mutated),
            derive_seed(cfg.seed, static_cast<std::uint64_t>(gen),
                        offspring.size())));
      }
    }
    Population merged = pop;
    merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                  std::make_move_iterator(offspring.end()));
    pop = survival(merged, n);
    result.history.push_back(summarize(pop, gen));
  }

  result.real_evaluations.reserve(pop.size());
  for (const auto& ind : pop) {
    result.real_evaluations.push_back(problem.evaluate_true(ind.x));
  }
  result.final_population = std::move(pop);
  return result;
}

}  // namespace offmoo

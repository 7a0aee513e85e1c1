#include "offmoo/ranking.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "offmoo/dominance.hpp"

namespace offmoo {

FrontPartition non_dominated_sort(const std::vector<Evaluation>& evals) {
  const int n = static_cast<int>(evals.size());
  if (n == 0) throw std::invalid_argument("non_dominated_sort: empty input");

  std::vector<int> domination_count(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> dominated_by(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (constrained_dominates(evals[static_cast<std::size_t>(i)],
                                evals[static_cast<std::size_t>(j)])) {
        dominated_by[static_cast<std::size_t>(i)].push_back(j);
        ++domination_count[static_cast<std::size_t>(j)];
      } else if (constrained_dominates(evals[static_cast<std::size_t>(j)],
                                       evals[static_cast<std::size_t>(i)])) {
        dominated_by[static_cast<std::size_t>(j)].push_back(i);
        ++domination_count[static_cast<std::size_t>(i)];
      }
    }
  }

  FrontPartition partition;
  std::vector<int> current;
  for (int i = 0; i < n; ++i) {
    if (domination_count[static_cast<std::size_t>(i)] == 0) current.push_back(i);
  }
  int front_index = 0;
  while (!current.empty()) {
    std::vector<int> next;
    for (int p : current) {
      for (int q : dominated_by[static_cast<std::size_t>(p)]) {
        if (--domination_count[static_cast<std::size_t>(q)] == 0) {
          next.push_back(q);
        }
      }
    }
    std::sort(next.begin(), next.end());  // canonical within-front order
    partition.keys.push_back(static_cast<Real>(front_index));
    partition.fronts.push_back(std::move(current));
    current = std::move(next);
    ++front_index;
  }
  return partition;
}

namespace {

std::vector<int> ranks_from_partition(const FrontPartition& partition, int n) {
  std::vector<int> rank(static_cast<std::size_t>(n), -1);
  for (int f = 0; f < partition.n_fronts(); ++f) {
    for (int p : partition.fronts[static_cast<std::size_t>(f)]) {
      rank[static_cast<std::size_t>(p)] = f;
    }
  }
  for (int r : rank) {
    if (r < 0) {
      throw std::logic_error("compute_rank: partition left an unranked member");
    }
  }
  return rank;
}

}  // namespace

std::vector<int> compute_rank(const std::vector<Evaluation>& evals) {
  return ranks_from_partition(non_dominated_sort(evals),
                              static_cast<int>(evals.size()));
}

FrontPartition dual_rank(const std::vector<Evaluation>& evals_original,
                         const std::vector<Evaluation>& evals_adjusted) {
  if (evals_original.size() != evals_adjusted.size()) {
    throw std::invalid_argument("dual_rank: population size mismatch");
  }
  const std::vector<int> rank_original = compute_rank(evals_original);
  const std::vector<int> rank_adjusted = compute_rank(evals_adjusted);

  // Group by the rank sum (an exact integer equal to twice the average
  // rank) so no float-equality comparison is involved.
  std::map<int, std::vector<int>> by_doubled_rank;
  for (std::size_t i = 0; i < rank_original.size(); ++i) {
    by_doubled_rank[rank_original[i] + rank_adjusted[i]].push_back(
        static_cast<int>(i));
  }
  FrontPartition hybrid;
  for (auto& [doubled, members] : by_doubled_rank) {
    hybrid.keys.push_back(static_cast<Real>(doubled) / 2.0);
    hybrid.fronts.push_back(std::move(members));
  }
  return hybrid;
}

std::vector<Real> crowding_distance(
    const std::vector<int>& front,
    const std::vector<ObjectiveVector>& objectives) {
  const std::size_t size = front.size();
  if (size == 0) throw std::invalid_argument("crowding_distance: empty front");
  constexpr Real kInf = std::numeric_limits<Real>::infinity();
  if (size <= 2) return std::vector<Real>(size, kInf);

  std::vector<Real> distance(size, 0.0);
  std::vector<std::size_t> order(size);
  const auto n_obj = objectives[static_cast<std::size_t>(front[0])].size();
  for (Eigen::Index m = 0; m < n_obj; ++m) {
    for (std::size_t i = 0; i < size; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const Real fa = objectives[static_cast<std::size_t>(front[a])][m];
      const Real fb = objectives[static_cast<std::size_t>(front[b])][m];
      if (fa != fb) return fa < fb;
      return front[a] < front[b];  // deterministic tie-break
    });
    const Real lo = objectives[static_cast<std::size_t>(front[order.front()])][m];
    const Real hi = objectives[static_cast<std::size_t>(front[order.back()])][m];
    distance[order.front()] = kInf;
    distance[order.back()] = kInf;
    const Real extent = hi - lo;
    if (extent <= 0) continue;  // degenerate objective contributes nothing
    for (std::size_t i = 1; i + 1 < size; ++i) {
      const Real gap =
          objectives[static_cast<std::size_t>(front[order[i + 1]])][m] -
          objectives[static_cast<std::size_t>(front[order[i - 1]])][m];
      distance[order[i]] += gap / extent;
    }
  }
  return distance;
}

}  // namespace offmoo

#include <doctest.h>

#include <numeric>
#include <set>

#include "offmoo/ranking.hpp"
#include "support/oracles.hpp"

using namespace offmoo;

namespace {

Evaluation eval2(Real f1, Real f2) {
  Evaluation e;
  e.objectives.resize(2);
  e.objectives << f1, f2;
  return e;
}

void check_partition_invariants(const FrontPartition& partition, int n) {
  std::set<int> seen;
  for (const auto& front : partition.fronts) {
    CHECK_FALSE(front.empty());
    for (int i : front) {
      CHECK(i >= 0);
      CHECK(i < n);
      CHECK_FALSE(seen.contains(i));
      seen.insert(i);
    }
  }
  CHECK(static_cast<int>(seen.size()) == n);
  for (std::size_t f = 1; f < partition.keys.size(); ++f) {
    CHECK(partition.keys[f] > partition.keys[f - 1]);
  }
}

}  // namespace

TEST_CASE("non_dominated_sort simple shapes") {
  // Mutually incomparable triple.
  const std::vector<Evaluation> flat = {eval2(0, 2), eval2(1, 1), eval2(2, 0)};
  const FrontPartition one = non_dominated_sort(flat);
  CHECK(one.n_fronts() == 1);
  CHECK(one.fronts[0] == std::vector<int>{0, 1, 2});

  // Dominance chain.
  const std::vector<Evaluation> chain = {eval2(1, 1), eval2(2, 2), eval2(3, 3)};
  const FrontPartition three = non_dominated_sort(chain);
  CHECK(three.n_fronts() == 3);
  CHECK(three.fronts[0] == std::vector<int>{0});
  CHECK(three.fronts[1] == std::vector<int>{1});
  CHECK(three.fronts[2] == std::vector<int>{2});
  CHECK(compute_rank(chain) == std::vector<int>{0, 1, 2});
}

TEST_CASE("non_dominated_sort matches the brute-force oracle") {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(31));
    const int k = 2 + static_cast<int>(rng.below(2));
    const int c = rng.uniform01() < 0.5 ? 0 : 2;
    const auto evals =
        test::random_evaluations(n, k, c, rng, rng.uniform01() < 0.3);
    const FrontPartition partition = non_dominated_sort(evals);
    check_partition_invariants(partition, n);
    const auto oracle = test::brute_force_fronts(evals);
    REQUIRE(partition.fronts.size() == oracle.size());
    for (std::size_t f = 0; f < oracle.size(); ++f) {
      CHECK(partition.fronts[f] == oracle[f]);
    }
  }
}

TEST_CASE("first front members do not dominate each other") {
  Rng rng(31);
  const auto evals = test::random_evaluations(40, 2, 2, rng);
  const FrontPartition partition = non_dominated_sort(evals);
  const auto& front0 = partition.fronts[0];
  for (int a : front0) {
    for (int b : front0) {
      if (a == b) continue;
      CHECK_FALSE(constrained_dominates(evals[static_cast<std::size_t>(a)],
                                        evals[static_cast<std::size_t>(b)]));
    }
  }
}

TEST_CASE("dual_rank collapses to plain sorting when inputs coincide") {
  Rng rng(41);
  const auto evals = test::random_evaluations(24, 2, 0, rng);
  const FrontPartition plain = non_dominated_sort(evals);
  const FrontPartition hybrid = dual_rank(evals, evals);
  REQUIRE(hybrid.n_fronts() == plain.n_fronts());
  for (int f = 0; f < plain.n_fronts(); ++f) {
    CHECK(hybrid.fronts[static_cast<std::size_t>(f)] ==
          plain.fronts[static_cast<std::size_t>(f)]);
    CHECK(hybrid.keys[static_cast<std::size_t>(f)] ==
          plain.keys[static_cast<std::size_t>(f)]);
  }
}

TEST_CASE("dual_rank half-integer merging") {
  // Ranks ori = [0, 1], adj = [1, 0]: both land on the same 0.5 front.
  const std::vector<Evaluation> ori = {eval2(0, 0), eval2(1, 1)};
  const std::vector<Evaluation> adj = {eval2(1, 1), eval2(0, 0)};
  const FrontPartition hybrid = dual_rank(ori, adj);
  CHECK(hybrid.n_fronts() == 1);
  CHECK(hybrid.fronts[0] == std::vector<int>{0, 1});
  CHECK(hybrid.keys[0] == 0.5);
}

TEST_CASE("dual_rank four-individual worked example") {
  // Constructed so ranks are ori = [0,0,1,1] and adj = [0,1,0,2].
  const std::vector<Evaluation> ori = {eval2(0, 3), eval2(3, 0), eval2(1, 4),
                                       eval2(4, 1)};
  const std::vector<Evaluation> adj = {eval2(0, 1), eval2(1, 2), eval2(1, 0),
                                       eval2(2, 3)};
  REQUIRE(compute_rank(ori) == std::vector<int>{0, 0, 1, 1});
  REQUIRE(compute_rank(adj) == std::vector<int>{0, 1, 0, 2});
  const FrontPartition hybrid = dual_rank(ori, adj);
  // r_avg = [0, 0.5, 0.5, 1.5] -> fronts [{0}, {1,2}, {3}].
  REQUIRE(hybrid.n_fronts() == 3);
  CHECK(hybrid.fronts[0] == std::vector<int>{0});
  CHECK(hybrid.fronts[1] == std::vector<int>{1, 2});
  CHECK(hybrid.fronts[2] == std::vector<int>{3});
  CHECK(hybrid.keys[0] == 0.0);
  CHECK(hybrid.keys[1] == 0.5);
  CHECK(hybrid.keys[2] == 1.5);
}

TEST_CASE("dual_rank agrees with the transcribed-algorithm oracle") {
  Rng rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(40));
    const int c = rng.uniform01() < 0.5 ? 0 : 1;
    const auto ori =
        test::random_evaluations(n, 2, c, rng, rng.uniform01() < 0.3);
    const auto adj =
        test::random_evaluations(n, 2, c, rng, rng.uniform01() < 0.3);
    const FrontPartition hybrid = dual_rank(ori, adj);
    check_partition_invariants(hybrid, n);
    const auto oracle = test::oracle_dual_rank(ori, adj);
    REQUIRE(hybrid.fronts.size() == oracle.fronts.size());
    for (std::size_t f = 0; f < oracle.fronts.size(); ++f) {
      CHECK(hybrid.fronts[f] == oracle.fronts[f]);
      CHECK(hybrid.keys[f] == oracle.keys[f]);
    }
  }
}

TEST_CASE("ranking is permutation-equivariant") {
  Rng rng(61);
  const int n = 20;
  const auto ori = test::random_evaluations(n, 2, 0, rng);
  const auto adj = test::random_evaluations(n, 2, 0, rng);
  const auto perm = rng.permutation(n);
  std::vector<Evaluation> ori_p(ori.size()), adj_p(adj.size());
  for (int i = 0; i < n; ++i) {
    ori_p[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
        ori[static_cast<std::size_t>(i)];
    adj_p[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
        adj[static_cast<std::size_t>(i)];
  }
  const FrontPartition base = dual_rank(ori, adj);
  const FrontPartition permuted = dual_rank(ori_p, adj_p);
  REQUIRE(base.n_fronts() == permuted.n_fronts());
  for (int f = 0; f < base.n_fronts(); ++f) {
    CHECK(base.keys[static_cast<std::size_t>(f)] ==
          permuted.keys[static_cast<std::size_t>(f)]);
    std::set<int> mapped;
    for (int i : base.fronts[static_cast<std::size_t>(f)]) {
      mapped.insert(perm[static_cast<std::size_t>(i)]);
    }
    const std::set<int> got(permuted.fronts[static_cast<std::size_t>(f)].begin(),
                            permuted.fronts[static_cast<std::size_t>(f)].end());
    CHECK(mapped == got);
  }
}

TEST_CASE("ranking error paths") {
  CHECK_THROWS_AS(non_dominated_sort({}), std::invalid_argument);
  const std::vector<Evaluation> one = {eval2(1, 1)};
  const std::vector<Evaluation> two = {eval2(1, 1), eval2(2, 2)};
  CHECK_THROWS_AS(dual_rank(one, two), std::invalid_argument);
  CHECK_THROWS_AS(crowding_distance({}, {}), std::invalid_argument);
}

TEST_CASE("crowding distance known cases") {
  const Real inf = std::numeric_limits<Real>::infinity();

  // Two-member front: both boundary.
  std::vector<ObjectiveVector> objectives = {Vec(2), Vec(2)};
  objectives[0] << 0, 1;
  objectives[1] << 1, 0;
  const auto pair_distances = crowding_distance({0, 1}, objectives);
  CHECK(pair_distances == std::vector<Real>{inf, inf});

  // Three evenly spaced collinear points on f1 + f2 = 2.
  objectives = {Vec(2), Vec(2), Vec(2)};
  objectives[0] << 0, 2;
  objectives[1] << 1, 1;
  objectives[2] << 2, 0;
  const auto distances = crowding_distance({0, 1, 2}, objectives);
  CHECK(distances[0] == inf);
  CHECK(distances[2] == inf);
  CHECK(distances[1] == doctest::Approx(2.0));

  // Degenerate objective: f2 constant contributes nothing.
  objectives[0] << 0, 1;
  objectives[1] << 1, 1;
  objectives[2] << 4, 1;
  const auto degenerate = crowding_distance({0, 1, 2}, objectives);
  CHECK(degenerate[1] == doctest::Approx(1.0));  // only the f1 gap ratio
}

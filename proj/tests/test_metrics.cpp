#include <doctest.h>

#include "offmoo/metrics.hpp"
#include "offmoo/rng.hpp"
#include "support/oracles.hpp"

using namespace offmoo;

namespace {

Vec point(Real a, Real b) {
  Vec v(2);
  v << a, b;
  return v;
}

std::vector<ObjectiveVector> random_front(int n, Rng& rng) {
  std::vector<ObjectiveVector> front;
  for (int i = 0; i < n; ++i) {
    front.push_back(point(rng.uniform(0, 1), rng.uniform(0, 1)));
  }
  return front;
}

}  // namespace

TEST_CASE("hypervolume_2d known values") {
  CHECK(hypervolume_2d({point(0, 0)}, point(1, 1)) == doctest::Approx(1.0));
  CHECK(hypervolume_2d({point(0, 1), point(1, 0)}, point(2, 2)) ==
        doctest::Approx(3.0));
  // A dominated point contributes nothing.
  CHECK(hypervolume_2d({point(0, 1), point(1, 0), point(1.5, 1.5)},
                       point(2, 2)) == doctest::Approx(3.0));
  // Points at or beyond the reference contribute nothing.
  CHECK(hypervolume_2d({point(2, 0), point(3, 3)}, point(2, 2)) == 0.0);
  CHECK(hypervolume_2d({}, point(1, 1)) == 0.0);
}

TEST_CASE("hypervolume_2d rejects other dimensions") {
  Vec ref3(3);
  ref3 << 1, 1, 1;
  CHECK_THROWS_AS(hypervolume_2d({}, ref3), std::invalid_argument);
}

TEST_CASE("hypervolume_2d is monotone under point insertion") {
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    auto front = random_front(1 + static_cast<int>(rng.below(20)), rng);
    const Vec ref = point(1.1, 1.1);
    const Real base = hypervolume_2d(front, ref);
    front.push_back(point(rng.uniform(0, 1), rng.uniform(0, 1)));
    const Real grown = hypervolume_2d(front, ref);
    CHECK(grown >= base - 1e-15);
    // A dominating point strictly grows HV when it enlarges the dominated
    // region, i.e. when no other front point already covers it.
    const Vec newcomer = front.front() * 0.5;
    bool covered = false;
    for (const auto& p : front) {
      if (dominates(p, newcomer) || p == newcomer) covered = true;
    }
    if (!covered && newcomer[0] > 0 && newcomer[1] > 0) {
      auto enlarged = front;
      enlarged.push_back(newcomer);
      CHECK(hypervolume_2d(enlarged, ref) > grown);
    }
  }
}

TEST_CASE("hypervolume_2d invariant under permutation and dominated removal") {
  Rng rng(79);
  auto front = random_front(25, rng);
  const Vec ref = point(1.2, 1.2);
  const Real base = hypervolume_2d(front, ref);
  auto shuffled = front;
  const auto perm = rng.permutation(static_cast<int>(front.size()));
  for (std::size_t i = 0; i < front.size(); ++i) {
    shuffled[static_cast<std::size_t>(perm[i])] = front[i];
  }
  CHECK(hypervolume_2d(shuffled, ref) == doctest::Approx(base).epsilon(1e-12));
  // Strip dominated points and recompute.
  std::vector<ObjectiveVector> nondominated;
  for (std::size_t i = 0; i < front.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < front.size() && !dominated; ++j) {
      if (i != j && dominates(front[j], front[i])) dominated = true;
    }
    if (!dominated) nondominated.push_back(front[i]);
  }
  CHECK(hypervolume_2d(nondominated, ref) ==
        doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("hypervolume_2d agrees with the Monte Carlo estimator") {
  Rng rng(83);
  for (int trial = 0; trial < 5; ++trial) {
    const auto front = random_front(2 + static_cast<int>(rng.below(49)), rng);
    const Vec ref = point(1.1, 1.1);
    const Real exact = hypervolume_2d(front, ref);
    const Real estimate = test::mc_hypervolume(front, ref, 1000000, 1000 + trial);
    CHECK(std::abs(exact - estimate) / exact < 0.01);
  }
}

TEST_CASE("mse known values") {
  Mat a(1, 2), b(1, 2);
  a << 0, 0;
  b << 0, 0;
  CHECK(mse(a, a) == 0.0);
  b << 1, 1;
  CHECK(mse(a, b) == doctest::Approx(1.0));
  Mat c(2, 2), d(2, 2);
  c << 0, 0, 2, 0;
  d << 1, 1, 0, 0;
  CHECK(mse(c, d) == doctest::Approx(1.5));
  CHECK(mse(d, c) == doctest::Approx(1.5));  // symmetric
  Mat e(1, 3);
  CHECK_THROWS_AS(mse(a, e), std::invalid_argument);
}

TEST_CASE("derive_reference_point rule") {
  Mat samples(2, 2);
  samples << 10, 4, 3, 1;
  const auto rp = derive_reference_point(samples, {});
  CHECK(rp.value[0] == doctest::Approx(11.0));
  CHECK(rp.value[1] == doctest::Approx(4.4));
  CHECK_FALSE(rp.degenerate);

  // Front points participate in the maximum.
  const auto rp2 = derive_reference_point(samples, {point(20, 2)});
  CHECK(rp2.value[0] == doctest::Approx(22.0));
  CHECK(rp2.value[1] == doctest::Approx(4.4));

  // Zero maxima flag a degenerate (zero extent) reference.
  Mat origin(1, 2);
  origin << 0, 0;
  const auto degenerate = derive_reference_point(origin, {});
  CHECK(degenerate.value[0] == 0.0);
  CHECK(degenerate.value[1] == 0.0);
  CHECK(degenerate.degenerate);

  // Negative maxima scale toward zero: max + 0.1*|max|.
  Mat negative(1, 2);
  negative << -2, -4;
  const auto neg = derive_reference_point(negative, {});
  CHECK(neg.value[0] == doctest::Approx(-1.8));
  CHECK(neg.value[1] == doctest::Approx(-3.6));

  CHECK_THROWS_AS(derive_reference_point(Mat(0, 2), {}), std::invalid_argument);
}

#include <doctest.h>

#include <cmath>

#include "offmoo/fitness.hpp"
#include "offmoo/rng.hpp"

using namespace offmoo;

TEST_CASE("inverse_normal_cdf known quantiles") {
  CHECK(inverse_normal_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(inverse_normal_cdf(0.9) == doctest::Approx(1.2815515655446004).epsilon(1e-9));
  CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-9));
  CHECK(inverse_normal_cdf(0.1) == doctest::Approx(-inverse_normal_cdf(0.9)));
  CHECK_THROWS_AS(inverse_normal_cdf(0.0), std::invalid_argument);
  CHECK_THROWS_AS(inverse_normal_cdf(1.0), std::invalid_argument);
  CHECK_THROWS_AS(inverse_normal_cdf(-0.1), std::invalid_argument);
}

TEST_CASE("inverse_normal_cdf round-trip on a logarithmic grid") {
  for (Real p = 1e-6; p < 0.5; p *= 2.7) {
    CHECK(std::abs(normal_cdf(inverse_normal_cdf(p)) - p) < 1e-9);
    const Real q = 1.0 - p;
    CHECK(std::abs(normal_cdf(inverse_normal_cdf(q)) - q) < 1e-9);
  }
  for (Real p : {0.25, 0.5, 0.75, 0.9, 0.95, 0.99}) {
    CHECK(std::abs(normal_cdf(inverse_normal_cdf(p)) - p) < 1e-9);
  }
}

namespace {

UncertainPrediction gaussian_pred(Real mu, Real sigma) {
  return UncertainPrediction{mu, sigma, PredictionKind::gaussian_like};
}

UncertainPrediction quantile_pred(Real median, Real gap) {
  return UncertainPrediction{median, gap, PredictionKind::quantile};
}

}  // namespace

TEST_CASE("make_fitness_pair gaussian-like") {
  const auto pair = make_fitness_pair({gaussian_pred(1.0, 0.5)}, 0.9);
  CHECK(pair.original[0] == doctest::Approx(1.0));
  CHECK(pair.adjusted[0] == doctest::Approx(1.6407757827723).epsilon(1e-6));
  CHECK(pair.z == doctest::Approx(1.2815515655446004).epsilon(1e-9));

  const auto zero_spread = make_fitness_pair({gaussian_pred(2.0, 0.0)}, 0.9);
  CHECK(zero_spread.adjusted[0] == zero_spread.original[0]);
}

TEST_CASE("make_fitness_pair quantile") {
  const auto pair = make_fitness_pair({quantile_pred(2.0, 0.3)}, 0.9);
  CHECK(pair.original[0] == doctest::Approx(2.0));
  CHECK(pair.adjusted[0] == doctest::Approx(2.3));
}

TEST_CASE("make_fitness_pair rejects mixed kinds and empty input") {
  CHECK_THROWS_AS(
      make_fitness_pair({gaussian_pred(1, 1), quantile_pred(1, 1)}, 0.9),
      std::invalid_argument);
  CHECK_THROWS_AS(make_fitness_pair({}, 0.9), std::invalid_argument);
}

TEST_CASE("adjusted dominates original componentwise for tau > 0.5") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<UncertainPrediction> preds;
    bool all_zero = true;
    for (int k = 0; k < 3; ++k) {
      const Real spread = rng.uniform01() < 0.3 ? 0.0 : rng.uniform(0, 2);
      all_zero = all_zero && spread == 0.0;
      preds.push_back(gaussian_pred(rng.uniform(-5, 5), spread));
    }
    const Real tau = rng.uniform(0.55, 0.99);
    const auto pair = make_fitness_pair(preds, tau);
    for (Eigen::Index k = 0; k < 3; ++k) {
      CHECK(pair.adjusted[k] >= pair.original[k]);
    }
    if (all_zero) CHECK(pair.adjusted == pair.original);
    if (!all_zero) CHECK(pair.adjusted != pair.original);
  }
}

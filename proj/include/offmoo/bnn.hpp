#pragma once

#include "offmoo/mlp.hpp"
#include "offmoo/scaling.hpp"
#include "offmoo/surrogate.hpp"

namespace offmoo {

/// KL( N(mu, diag(sigma^2)) || N(0, I) ) in closed form.
Real kl_diag_gaussian_to_std_normal(const Vec& mu, const Vec& sigma);

/// Mean-field variational state over every network parameter: one
/// independent Gaussian per weight, sigma = softplus(rho), standard
/// normal prior, plus a learned homoscedastic observation noise.
struct BnnTrainState {
  std::vector<int> sizes;
  Vec mu;
  Vec rho;
  Real noise_log_std = 0;

  /// Random mean init with tight posteriors (rho = -3).
  static BnnTrainState init(std::vector<int> sizes, Rng& rng);
  /// q equal to the prior: mu = 0, sigma = 1.
  static BnnTrainState init_at_prior(std::vector<int> sizes);

  Vec sigma() const;
  Real kl_to_prior() const;
};

/// One reparameterized gradient-ascent step on the evidence lower bound
/// (Gaussian likelihood minus closed-form KL), full batch, one weight
/// sample. Returns the sampled ELBO value; throws std::runtime_error when
/// it is not finite.
Real elbo_step(BnnTrainState& state, const Mat& X, const Vec& y,
               AdamOptimizer& optimizer, Rng& rng);

/// Bayesian network surrogate: predictions are the sample mean and
/// (population) standard deviation of S forward passes with weights drawn
/// from the fitted posterior.
class BayesianNetSurrogate : public Surrogate {
 public:
  static BayesianNetSurrogate fit(const Mat& X, const Vec& y,
                                  const TrainConfig& cfg);

  UncertainPrediction predict(const Vec& x,
                              std::uint64_t sample_seed) const override;
  PredictionKind prediction_kind() const override {
    return PredictionKind::gaussian_like;
  }
  nlohmann::json to_json() const override;
  static BayesianNetSurrogate from_json(const nlohmann::json& doc);

  Vec sample_outputs(const Vec& x, int n_samples, std::uint64_t seed) const;
  const BnnTrainState& state() const { return state_; }

 private:
  BnnTrainState state_;
  InputScaling in_scale_;
  TargetScaling out_scale_;
  int samples_ = 100;
};

}  // namespace offmoo

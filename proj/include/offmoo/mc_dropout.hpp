#pragma once

#include "offmoo/mlp.hpp"
#include "offmoo/scaling.hpp"
#include "offmoo/surrogate.hpp"

namespace offmoo {

/// Monte Carlo Dropout: an MLP trained with dropout that keeps dropout
/// active at prediction time. The predictive mean and variance are the
/// sample mean and (population) variance of T stochastic forward passes.
class McDropoutSurrogate : public Surrogate {
 public:
  static McDropoutSurrogate fit(const Mat& X, const Vec& y,
                                const TrainConfig& cfg);

  UncertainPrediction predict(const Vec& x,
                              std::uint64_t sample_seed) const override;
  PredictionKind prediction_kind() const override {
    return PredictionKind::gaussian_like;
  }
  nlohmann::json to_json() const override;
  static McDropoutSurrogate from_json(const nlohmann::json& doc);

  /// The de-standardized stochastic passes predict() averages; exposed so
  /// the variance identity can be checked on captured samples.
  Vec sample_passes(const Vec& x, int passes, std::uint64_t seed) const;

  Real dropout_rate() const { return dropout_rate_; }
  int passes() const { return passes_; }

 private:
  Mlp net_;
  InputScaling in_scale_;
  TargetScaling out_scale_;
  Real dropout_rate_ = 0.1;
  int passes_ = 100;
};

}  // namespace offmoo

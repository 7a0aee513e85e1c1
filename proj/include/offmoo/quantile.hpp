#pragma once

#include "offmoo/mlp.hpp"
#include "offmoo/scaling.hpp"
#include "offmoo/surrogate.hpp"

namespace offmoo {

/// Quantile regressor: one MLP trunk with a median head and a
/// non-negative gap head (softplus), trained jointly on pinball losses at
/// tau = 0.5 and the configured upper tau. The upper quantile is median +
/// gap, so the two heads cannot cross.
class QuantileSurrogate : public Surrogate {
 public:
  static QuantileSurrogate fit(const Mat& X, const Vec& y,
                               const TrainConfig& cfg, Real tau_upper);

  UncertainPrediction predict(const Vec& x, std::uint64_t) const override;
  PredictionKind prediction_kind() const override {
    return PredictionKind::quantile;
  }
  nlohmann::json to_json() const override;
  static QuantileSurrogate from_json(const nlohmann::json& doc);

  Real tau_upper() const { return tau_upper_; }

 private:
  Mlp net_;
  InputScaling in_scale_;
  TargetScaling out_scale_;
  Real tau_upper_ = 0.9;
};

}  // namespace offmoo

#pragma once

#include <Eigen/Cholesky>

#include "offmoo/scaling.hpp"
#include "offmoo/surrogate.hpp"

namespace offmoo {

/// Squared-exponential covariance with a constant signal-variance factor:
/// s^2 * exp(-|x - x'|^2 / (2 l^2)).
Real rbf_kernel(const Vec& x, const Vec& x_prime, Real signal_variance,
                Real length_scale);

/// Gaussian process regressor with a constant (zero, in standardized
/// space) mean, isotropic squared-exponential kernel, and a diagonal
/// nugget. Hyperparameters are chosen by multi-start maximization of the
/// log marginal likelihood.
class KrigingModel : public Surrogate {
 public:
  static KrigingModel fit(const Mat& X, const Vec& y, const TrainConfig& cfg);

  UncertainPrediction predict(const Vec& x, std::uint64_t) const override;
  PredictionKind prediction_kind() const override {
    return PredictionKind::gaussian_like;
  }
  nlohmann::json to_json() const override;
  static KrigingModel from_json(const nlohmann::json& doc);

  Real length_scale() const { return std::exp(log_length_); }
  Real signal_variance() const { return std::exp(log_signal_); }
  Real nugget() const { return nugget_; }
  Real log_marginal_likelihood() const { return lml_; }
  const InputScaling& input_scaling() const { return in_scale_; }
  const TargetScaling& target_scaling() const { return out_scale_; }
  const Mat& train_inputs() const { return X_; }  // normalized rows

 private:
  void factorize();  // builds chol_ and dual_ from the stored state

  InputScaling in_scale_;
  TargetScaling out_scale_;
  Mat X_;        // normalized training inputs
  Vec y_std_;    // standardized targets
  Real log_length_ = 0;
  Real log_signal_ = 0;
  Real nugget_ = 1e-3;
  Real lml_ = 0;
  Mat chol_lower_;
  Vec dual_;     // (K + nugget I)^{-1} y_std
};

}  // namespace offmoo

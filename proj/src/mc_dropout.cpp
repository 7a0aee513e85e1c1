#include "offmoo/mc_dropout.hpp"

#include <cmath>
#include <stdexcept>

#include "offmoo/serialize.hpp"

namespace offmoo {

McDropoutSurrogate McDropoutSurrogate::fit(const Mat& X, const Vec& y,
                                           const TrainConfig& cfg) {
  if (X.rows() == 0 || X.rows() != y.size()) {
    throw std::invalid_argument("mcd fit: bad training shapes");
  }
  McDropoutSurrogate model;
  model.dropout_rate_ = cfg.dropout_rate;
  model.passes_ = cfg.mc_passes;
  model.in_scale_ = InputScaling::fit(X);
  model.out_scale_ = TargetScaling::fit(y);
  const Mat Xs = model.in_scale_.apply_rows(X);
  const Vec ys = model.out_scale_.standardize(y);

  Rng rng(cfg.seed);
  model.net_ = Mlp({static_cast<int>(X.cols()), cfg.hidden, 1}, rng);
  AdamOptimizer optimizer(cfg.learning_rate);
  const LossSpec loss{LossSpec::Type::mse};
  const int epochs = cfg.epochs > 0 ? cfg.epochs : 2000;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    mlp_train_step(model.net_, Xs, ys, loss, cfg.dropout_rate, optimizer, rng);
  }
  return model;
}

Vec McDropoutSurrogate::sample_passes(const Vec& x, int passes,
                                      std::uint64_t seed) const {
  if (net_.weights.empty()) {
    throw std::invalid_argument("mcd predict: model not fitted");
  }
  const Mat z = in_scale_.apply(x).transpose();
  Rng rng(seed);
  Vec samples(passes);
  for (int t = 0; t < passes; ++t) {
    const Mat out = net_.forward_dropout(z, dropout_rate_, rng, nullptr);
    samples[t] = out_scale_.destandardize_center(out(0, 0));
  }
  return samples;
}

UncertainPrediction McDropoutSurrogate::predict(
    const Vec& x, std::uint64_t sample_seed) const {
  if (dropout_rate_ == 0.0) {
    // Every pass is the same deterministic network.
    UncertainPrediction pred;
    pred.kind = PredictionKind::gaussian_like;
    pred.center = sample_passes(x, 1, sample_seed)[0];
    pred.spread = 0.0;
    return pred;
  }
  const Vec samples = sample_passes(x, passes_, sample_seed);
  const Real mean = samples.mean();
  // Var(y) = mean of squares minus squared mean over the T passes.
  const Real variance = samples.array().square().mean() - mean * mean;
  UncertainPrediction pred;
  pred.kind = PredictionKind::gaussian_like;
  pred.center = mean;
  pred.spread = std::sqrt(std::max(0.0, variance));
  return pred;
}

nlohmann::json McDropoutSurrogate::to_json() const {
  nlohmann::json layers = nlohmann::json::array();
  for (std::size_t l = 0; l < net_.weights.size(); ++l) {
    layers.push_back(nlohmann::json{{"weight", mat_to_json(net_.weights[l])},
                                    {"bias", vec_to_json(net_.biases[l])}});
  }
  return nlohmann::json{
      {"model", "mcd"},
      {"sizes", net_.sizes},
      {"layers", layers},
      {"input_offset", vec_to_json(in_scale_.offset)},
      {"input_scale", vec_to_json(in_scale_.scale)},
      {"target_mean", real_to_json(out_scale_.mean)},
      {"target_std", real_to_json(out_scale_.std)},
      {"dropout_rate", real_to_json(dropout_rate_)},
      {"passes", passes_},
  };
}

McDropoutSurrogate McDropoutSurrogate::from_json(const nlohmann::json& doc) {
  McDropoutSurrogate model;
  model.net_ = Mlp::zeros(doc.at("sizes").get<std::vector<int>>());
  const auto& layers = doc.at("layers");
  for (std::size_t l = 0; l < model.net_.weights.size(); ++l) {
    model.net_.weights[l] = mat_from_json(layers[l].at("weight"));
    model.net_.biases[l] = vec_from_json(layers[l].at("bias"));
  }
  model.in_scale_.offset = vec_from_json(doc.at("input_offset"));
  model.in_scale_.scale = vec_from_json(doc.at("input_scale"));
  model.out_scale_.mean = real_from_json(doc.at("target_mean"));
  model.out_scale_.std = real_from_json(doc.at("target_std"));
  model.dropout_rate_ = real_from_json(doc.at("dropout_rate"));
  model.passes_ = doc.at("passes").get<int>();
  return model;
}

}  // namespace offmoo

#include "offmoo/quantile.hpp"

#include <stdexcept>

#include "offmoo/serialize.hpp"

namespace offmoo {

QuantileSurrogate QuantileSurrogate::fit(const Mat& X, const Vec& y,
                                         const TrainConfig& cfg,
                                         Real tau_upper) {
  if (X.rows() == 0 || X.rows() != y.size()) {
    throw std::invalid_argument("quantile fit: bad training shapes");
  }
  QuantileSurrogate model;
  model.tau_upper_ = tau_upper;
  model.in_scale_ = InputScaling::fit(X);
  model.out_scale_ = TargetScaling::fit(y);
  const Mat Xs = model.in_scale_.apply_rows(X);
  const Vec ys = model.out_scale_.standardize(y);

  Rng rng(cfg.seed);
  model.net_ = Mlp({static_cast<int>(X.cols()), cfg.hidden, 2}, rng);
  AdamOptimizer optimizer(cfg.learning_rate);
  const LossSpec loss{LossSpec::Type::two_head_pinball, 0.5, tau_upper};
  const int epochs = cfg.epochs > 0 ? cfg.epochs : 2000;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    mlp_train_step(model.net_, Xs, ys, loss, 0.0, optimizer, rng);
  }
  return model;
}

UncertainPrediction QuantileSurrogate::predict(const Vec& x,
                                               std::uint64_t) const {
  if (net_.weights.empty()) {
    throw std::invalid_argument("quantile predict: model not fitted");
  }
  const Vec out = net_.forward_one(in_scale_.apply(x));
  UncertainPrediction pred;
  pred.kind = PredictionKind::quantile;
  pred.center = out_scale_.destandardize_center(out[0]);
  pred.spread = out_scale_.destandardize_spread(softplus(out[1]));
  return pred;
}

nlohmann::json QuantileSurrogate::to_json() const {
  nlohmann::json layers = nlohmann::json::array();
  for (std::size_t l = 0; l < net_.weights.size(); ++l) {
    layers.push_back(nlohmann::json{{"weight", mat_to_json(net_.weights[l])},
                                    {"bias", vec_to_json(net_.biases[l])}});
  }
  return nlohmann::json{
      {"model", "qr"},
      {"sizes", net_.sizes},
      {"layers", layers},
      {"input_offset", vec_to_json(in_scale_.offset)},
      {"input_scale", vec_to_json(in_scale_.scale)},
      {"target_mean", real_to_json(out_scale_.mean)},
      {"target_std", real_to_json(out_scale_.std)},
      {"tau_upper", real_to_json(tau_upper_)},
  };
}

QuantileSurrogate QuantileSurrogate::from_json(const nlohmann::json& doc) {
  QuantileSurrogate model;
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
  model.tau_upper_ = real_from_json(doc.at("tau_upper"));
  return model;
}

}  // namespace offmoo

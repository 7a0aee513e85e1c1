#include "offmoo/bnn.hpp"

#include <cmath>
#include <stdexcept>

#include "offmoo/serialize.hpp"

namespace offmoo {

Real kl_diag_gaussian_to_std_normal(const Vec& mu, const Vec& sigma) {
  if (mu.size() != sigma.size()) {
    throw std::invalid_argument("kl_diag_gaussian_to_std_normal: size mismatch");
  }
  return 0.5 * (sigma.array().square() + mu.array().square() - 1.0 -
                2.0 * sigma.array().log())
                   .sum();
}

BnnTrainState BnnTrainState::init(std::vector<int> sizes, Rng& rng) {
  BnnTrainState state;
  Mlp net(sizes, rng);  // reuse the He-scaled draw for the means
  state.sizes = std::move(sizes);
  state.mu = net.pack_parameters();
  state.rho = Vec::Constant(state.mu.size(), -3.0);
  return state;
}

BnnTrainState BnnTrainState::init_at_prior(std::vector<int> sizes) {
  BnnTrainState state;
  Mlp net = Mlp::zeros(sizes);
  state.sizes = std::move(sizes);
  state.mu = Vec::Zero(net.parameter_count());
  // softplus(rho) = 1  =>  rho = ln(e - 1)
  state.rho = Vec::Constant(state.mu.size(), std::log(std::exp(1.0) - 1.0));
  return state;
}

Vec BnnTrainState::sigma() const {
  Vec s(rho.size());
  for (Eigen::Index i = 0; i < rho.size(); ++i) s[i] = softplus(rho[i]);
  return s;
}

Real BnnTrainState::kl_to_prior() const {
  return kl_diag_gaussian_to_std_normal(mu, sigma());
}

Real elbo_step(BnnTrainState& state, const Mat& X, const Vec& y,
               AdamOptimizer& optimizer, Rng& rng) {
  const auto n_params = state.mu.size();
  const auto n = static_cast<Real>(X.rows());

  // Reparameterized weight sample w = mu + sigma * eps.
  Vec eps(n_params), sigma(n_params);
  for (Eigen::Index i = 0; i < n_params; ++i) {
    eps[i] = rng.normal();
    sigma[i] = softplus(state.rho[i]);
  }
  const Vec w = state.mu + sigma.cwiseProduct(eps);

  Mlp net = Mlp::zeros(state.sizes);
  net.unpack_parameters(w);
  Mlp::ForwardCache cache;
  const Mat out = net.forward_dropout(X, 0.0, rng, &cache);
  const Vec residual = out.col(0) - y;

  const Real noise_var = std::exp(2.0 * state.noise_log_std);
  const Real log_lik = -0.5 * n * std::log(2.0 * 3.14159265358979323846) -
                       n * state.noise_log_std -
                       residual.squaredNorm() / (2.0 * noise_var);
  const Real kl = kl_diag_gaussian_to_std_normal(state.mu, sigma);
  const Real elbo = log_lik - kl;
  if (!std::isfinite(elbo)) {
    throw std::runtime_error("elbo_step: non-finite ELBO");
  }

  // Gradient of -log_lik through the sampled network.
  Mat grad_out(out.rows(), 1);
  grad_out.col(0) = residual / noise_var;
  const Vec grad_w = net.pack_gradients(net.backward(cache, grad_out));

  // Chain to the variational parameters; the KL term is closed form.
  Vec sig_prime(n_params);
  for (Eigen::Index i = 0; i < n_params; ++i) {
    sig_prime[i] = sigmoid(state.rho[i]);
  }
  const Vec grad_mu = grad_w + state.mu;
  const Vec grad_rho =
      (grad_w.cwiseProduct(eps) +
       (sigma.array() - sigma.array().inverse()).matrix())
          .cwiseProduct(sig_prime);
  const Real grad_noise =
      n - residual.squaredNorm() / noise_var;  // d(-log_lik)/d(log_std)

  Vec params(2 * n_params + 1), grads(2 * n_params + 1);
  params << state.mu, state.rho, state.noise_log_std;
  grads << grad_mu, grad_rho, grad_noise;
  if (!grads.allFinite()) {
    throw std::runtime_error("elbo_step: non-finite gradient");
  }
  optimizer.step(params, grads);
  state.mu = params.head(n_params);
  state.rho = params.segment(n_params, n_params);
  state.noise_log_std = params[2 * n_params];
  return elbo;
}

BayesianNetSurrogate BayesianNetSurrogate::fit(const Mat& X, const Vec& y,
                                               const TrainConfig& cfg) {
  if (X.rows() == 0 || X.rows() != y.size()) {
    throw std::invalid_argument("bnn fit: bad training shapes");
  }
  BayesianNetSurrogate model;
  model.samples_ = cfg.posterior_samples;
  model.in_scale_ = InputScaling::fit(X);
  model.out_scale_ = TargetScaling::fit(y);
  const Mat Xs = model.in_scale_.apply_rows(X);
  const Vec ys = model.out_scale_.standardize(y);

  Rng rng(cfg.seed);
  model.state_ =
      BnnTrainState::init({static_cast<int>(X.cols()), cfg.hidden, 1}, rng);
  AdamOptimizer optimizer(cfg.learning_rate);
  const int steps = cfg.epochs > 0 ? cfg.epochs : 3000;
  for (int step = 0; step < steps; ++step) {
    elbo_step(model.state_, Xs, ys, optimizer, rng);
  }
  return model;
}

Vec BayesianNetSurrogate::sample_outputs(const Vec& x, int n_samples,
                                         std::uint64_t seed) const {
  if (state_.mu.size() == 0) {
    throw std::invalid_argument("bnn predict: model not fitted");
  }
  const Vec z = in_scale_.apply(x);
  const Vec sigma = state_.sigma();
  Rng rng(seed);
  Mlp net = Mlp::zeros(state_.sizes);
  Vec w(state_.mu.size());
  Vec outputs(n_samples);
  for (int s = 0; s < n_samples; ++s) {
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      w[i] = state_.mu[i] + sigma[i] * rng.normal();
    }
    net.unpack_parameters(w);
    outputs[s] = out_scale_.destandardize_center(net.forward_one(z)[0]);
  }
  return outputs;
}

UncertainPrediction BayesianNetSurrogate::predict(
    const Vec& x, std::uint64_t sample_seed) const {
  const Vec outputs = sample_outputs(x, samples_, sample_seed);
  const Real mean = outputs.mean();
  const Real variance = outputs.array().square().mean() - mean * mean;
  UncertainPrediction pred;
  pred.kind = PredictionKind::gaussian_like;
  pred.center = mean;
  pred.spread = std::sqrt(std::max(0.0, variance));
  return pred;
}

nlohmann::json BayesianNetSurrogate::to_json() const {
  return nlohmann::json{
      {"model", "bnn"},
      {"sizes", state_.sizes},
      {"mu", vec_to_json(state_.mu)},
      {"rho", vec_to_json(state_.rho)},
      {"noise_log_std", real_to_json(state_.noise_log_std)},
      {"input_offset", vec_to_json(in_scale_.offset)},
      {"input_scale", vec_to_json(in_scale_.scale)},
      {"target_mean", real_to_json(out_scale_.mean)},
      {"target_std", real_to_json(out_scale_.std)},
      {"samples", samples_},
  };
}

BayesianNetSurrogate BayesianNetSurrogate::from_json(
    const nlohmann::json& doc) {
  BayesianNetSurrogate model;
  model.state_.sizes = doc.at("sizes").get<std::vector<int>>();
  model.state_.mu = vec_from_json(doc.at("mu"));
  model.state_.rho = vec_from_json(doc.at("rho"));
  model.state_.noise_log_std = real_from_json(doc.at("noise_log_std"));
  model.in_scale_.offset = vec_from_json(doc.at("input_offset"));
  model.in_scale_.scale = vec_from_json(doc.at("input_scale"));
  model.out_scale_.mean = real_from_json(doc.at("target_mean"));
  model.out_scale_.std = real_from_json(doc.at("target_std"));
  model.samples_ = doc.at("samples").get<int>();
  return model;
}

}  // namespace offmoo

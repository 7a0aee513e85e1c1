#include "offmoo/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace offmoo {

Real pinball_loss(Real residual, Real tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("pinball_loss: tau must be in (0, 1)");
  }
  return residual >= 0 ? tau * residual : (1.0 - tau) * (-residual);
}

Real softplus(Real x) {
  if (x > 30.0) return x;
  if (x < -30.0) return std::exp(x);
  return std::log1p(std::exp(x));
}

Real sigmoid(Real x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const Real e = std::exp(x);
  return e / (1.0 + e);
}

void AdamOptimizer::step(Vec& params, const Vec& grad) {
  if (m_.size() == 0) {
    m_ = Vec::Zero(params.size());
    v_ = Vec::Zero(params.size());
  }
  if (grad.size() != params.size() || m_.size() != params.size()) {
    throw std::invalid_argument("AdamOptimizer::step: size mismatch");
  }
  ++t_;
  m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
  v_ = beta2_ * v_ + (1.0 - beta2_) * grad.array().square().matrix();
  const Real bias1 = 1.0 - std::pow(beta1_, static_cast<Real>(t_));
  const Real bias2 = 1.0 - std::pow(beta2_, static_cast<Real>(t_));
  params.array() -= lr_ * (m_.array() / bias1) /
                    ((v_.array() / bias2).sqrt() + epsilon_);
}

Mlp::Mlp(std::vector<int> layer_sizes, Rng& rng) : sizes(std::move(layer_sizes)) {
  if (sizes.size() < 2) {
    throw std::invalid_argument("Mlp: need at least input and output sizes");
  }
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const int fan_in = sizes[l];
    const int fan_out = sizes[l + 1];
    Mat w(fan_out, fan_in);
    const Real scale = std::sqrt(2.0 / static_cast<Real>(fan_in));
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        w(i, j) = scale * rng.normal();
      }
    }
    weights.push_back(std::move(w));
    biases.push_back(Vec::Zero(fan_out));
  }
}

Mlp Mlp::zeros(std::vector<int> layer_sizes) {
  Mlp net;
  net.sizes = std::move(layer_sizes);
  if (net.sizes.size() < 2) {
    throw std::invalid_argument("Mlp: need at least input and output sizes");
  }
  for (std::size_t l = 0; l + 1 < net.sizes.size(); ++l) {
    net.weights.push_back(Mat::Zero(net.sizes[l + 1], net.sizes[l]));
    net.biases.push_back(Vec::Zero(net.sizes[l + 1]));
  }
  return net;
}

Mat Mlp::forward(const Mat& X) const {
  Mat a = X;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    Mat z = (a * weights[l].transpose()).rowwise() + biases[l].transpose();
    if (l + 1 < weights.size()) {
      a = z.cwiseMax(0.0);
    } else {
      a = std::move(z);
    }
  }
  return a;
}

Vec Mlp::forward_one(const Vec& x) const {
  return forward(x.transpose()).row(0).transpose();
}

Mat Mlp::forward_dropout(const Mat& X, Real dropout_rate, Rng& rng,
                         ForwardCache* cache) const {
  if (dropout_rate < 0.0 || dropout_rate >= 1.0) {
    throw std::invalid_argument("forward_dropout: rate must be in [0, 1)");
  }
  if (cache) {
    cache->layer_inputs.clear();
    cache->preactivations.clear();
    cache->dropout_masks.clear();
  }
  Mat a = X;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (cache) cache->layer_inputs.push_back(a);
    Mat z = (a * weights[l].transpose()).rowwise() + biases[l].transpose();
    if (cache) cache->preactivations.push_back(z);
    if (l + 1 < weights.size()) {
      a = z.cwiseMax(0.0);
      if (dropout_rate > 0.0) {
        const Real keep = 1.0 - dropout_rate;
        Mat mask(a.rows(), a.cols());
        for (Eigen::Index i = 0; i < mask.rows(); ++i) {
          for (Eigen::Index j = 0; j < mask.cols(); ++j) {
            mask(i, j) = rng.uniform01() < keep ? 1.0 / keep : 0.0;
          }
        }
        a = a.cwiseProduct(mask);
        if (cache) cache->dropout_masks.push_back(std::move(mask));
      } else if (cache) {
        cache->dropout_masks.emplace_back();
      }
    } else {
      a = std::move(z);
    }
  }
  return a;
}

Mlp::Gradients Mlp::backward(const ForwardCache& cache,
                             const Mat& grad_output) const {
  Gradients grads;
  grads.weights.resize(weights.size());
  grads.biases.resize(biases.size());
  Mat g = grad_output;
  for (std::size_t l = weights.size(); l-- > 0;) {
    grads.weights[l] = g.transpose() * cache.layer_inputs[l];
    grads.biases[l] = g.colwise().sum().transpose();
    if (l > 0) {
      Mat upstream = g * weights[l];
      if (cache.dropout_masks[l - 1].size() > 0) {
        upstream = upstream.cwiseProduct(cache.dropout_masks[l - 1]);
      }
      // Rectifier derivative from the cached preactivation.
      upstream =
          upstream.cwiseProduct((cache.preactivations[l - 1].array() > 0.0)
                                    .cast<Real>()
                                    .matrix());
      g = std::move(upstream);
    }
  }
  return grads;
}

Eigen::Index Mlp::parameter_count() const {
  Eigen::Index n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    n += weights[l].size() + biases[l].size();
  }
  return n;
}

Vec Mlp::pack_parameters() const {
  Vec flat(parameter_count());
  Eigen::Index at = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    flat.segment(at, weights[l].size()) =
        Eigen::Map<const Vec>(weights[l].data(), weights[l].size());
    at += weights[l].size();
    flat.segment(at, biases[l].size()) = biases[l];
    at += biases[l].size();
  }
  return flat;
}

void Mlp::unpack_parameters(const Vec& flat) {
  if (flat.size() != parameter_count()) {
    throw std::invalid_argument("unpack_parameters: size mismatch");
  }
  Eigen::Index at = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    Eigen::Map<Vec>(weights[l].data(), weights[l].size()) =
        flat.segment(at, weights[l].size());
    at += weights[l].size();
    biases[l] = flat.segment(at, biases[l].size());
    at += biases[l].size();
  }
}

Vec Mlp::pack_gradients(const Gradients& grads) const {
  Vec flat(parameter_count());
  Eigen::Index at = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    flat.segment(at, grads.weights[l].size()) = Eigen::Map<const Vec>(
        grads.weights[l].data(), grads.weights[l].size());
    at += grads.weights[l].size();
    flat.segment(at, grads.biases[l].size()) = grads.biases[l];
    at += grads.biases[l].size();
  }
  return flat;
}

Real evaluate_loss(const LossSpec& loss, const Mat& output, const Vec& targets,
                   Mat* grad_output) {
  const auto n = output.rows();
  if (targets.size() != n) {
    throw std::invalid_argument("evaluate_loss: target size mismatch");
  }
  const Real inv_n = 1.0 / static_cast<Real>(n);
  if (loss.type == LossSpec::Type::mse) {
    if (output.cols() != 1) {
      throw std::invalid_argument("evaluate_loss: mse expects one output");
    }
    const Vec residual = output.col(0) - targets;
    if (grad_output) {
      grad_output->resize(n, 1);
      grad_output->col(0) = 2.0 * inv_n * residual;
    }
    return residual.array().square().mean();
  }

  // Two quantile heads: median m = out0, upper = m + softplus(out1).
  if (output.cols() != 2) {
    throw std::invalid_argument("evaluate_loss: two_head_pinball expects two outputs");
  }
  if (grad_output) grad_output->setZero(n, 2);
  Real total = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Real median = output(i, 0);
    const Real gap = softplus(output(i, 1));
    const Real u_median = targets[i] - median;
    const Real u_upper = targets[i] - (median + gap);
    total += pinball_loss(u_median, loss.tau_median) +
             pinball_loss(u_upper, loss.tau_upper);
    if (grad_output) {
      const Real dmed = u_median >= 0 ? loss.tau_median : loss.tau_median - 1.0;
      const Real dup = u_upper >= 0 ? loss.tau_upper : loss.tau_upper - 1.0;
      (*grad_output)(i, 0) = -(dmed + dup) * inv_n;
      (*grad_output)(i, 1) = -dup * sigmoid(output(i, 1)) * inv_n;
    }
  }
  return total * inv_n;
}

Real mlp_train_step(Mlp& model, const Mat& X, const Vec& y,
                    const LossSpec& loss, Real dropout_rate,
                    AdamOptimizer& optimizer, Rng& rng) {
  Mlp::ForwardCache cache;
  const Mat output = model.forward_dropout(X, dropout_rate, rng, &cache);
  Mat grad_output;
  const Real loss_value = evaluate_loss(loss, output, y, &grad_output);
  if (!std::isfinite(loss_value)) {
    throw std::runtime_error("mlp_train_step: non-finite loss");
  }
  const Mlp::Gradients grads = model.backward(cache, grad_output);
  Vec flat_grad = model.pack_gradients(grads);
  if (!flat_grad.allFinite()) {
    throw std::runtime_error("mlp_train_step: non-finite gradient");
  }
  Vec params = model.pack_parameters();
  optimizer.step(params, flat_grad);
  model.unpack_parameters(params);
  return loss_value;
}

}  // namespace offmoo

#pragma once

#include <vector>

#include "offmoo/rng.hpp"
#include "offmoo/types.hpp"

namespace offmoo {

/// Check function rho_tau: tau*u for u >= 0, (1-tau)*|u| otherwise.
/// Throws for tau outside (0, 1).
Real pinball_loss(Real residual, Real tau);

Real softplus(Real x);
Real sigmoid(Real x);

struct LossSpec {
  enum class Type { mse, two_head_pinball };
  Type type = Type::mse;
  Real tau_median = 0.5;  // two_head_pinball only
  Real tau_upper = 0.9;
};

/// Adam over a flat parameter vector, standard moment parameters.
class AdamOptimizer {
 public:
  explicit AdamOptimizer(Real learning_rate, Real beta1 = 0.9,
                         Real beta2 = 0.999, Real epsilon = 1e-8)
      : lr_(learning_rate), beta1_(beta1), beta2_(beta2), epsilon_(epsilon) {}

  void step(Vec& params, const Vec& grad);

 private:
  Real lr_, beta1_, beta2_, epsilon_;
  long t_ = 0;
  Vec m_, v_;
};

/// Fully connected network with rectifier activations between layers and
/// optional inverted dropout on the hidden activations. Rows are samples.
class Mlp {
 public:
  Mlp() = default;
  /// He-initialized weights, zero biases, drawn from `rng`.
  Mlp(std::vector<int> layer_sizes, Rng& rng);
  /// All-zero parameters (for unpacking a stored parameter vector).
  static Mlp zeros(std::vector<int> layer_sizes);

  int input_size() const { return sizes.front(); }
  int output_size() const { return sizes.back(); }

  struct ForwardCache {
    std::vector<Mat> layer_inputs;  // input to each layer
    std::vector<Mat> preactivations;
    std::vector<Mat> dropout_masks;  // per hidden layer; empty when rate == 0
  };

  /// Deterministic forward pass (no dropout).
  Mat forward(const Mat& X) const;
  Vec forward_one(const Vec& x) const;

  /// Forward pass with fresh inverted-dropout masks on hidden activations.
  Mat forward_dropout(const Mat& X, Real dropout_rate, Rng& rng,
                      ForwardCache* cache = nullptr) const;

  struct Gradients {
    std::vector<Mat> weights;
    std::vector<Vec> biases;
  };

  /// Backpropagates dLoss/dOutput through the cached pass.
  Gradients backward(const ForwardCache& cache, const Mat& grad_output) const;

  Vec pack_parameters() const;
  void unpack_parameters(const Vec& flat);
  Vec pack_gradients(const Gradients& grads) const;
  Eigen::Index parameter_count() const;

  std::vector<int> sizes;
  std::vector<Mat> weights;  // weights[l] is (sizes[l+1] x sizes[l])
  std::vector<Vec> biases;
};

/// Mean training loss over the batch. Fills grad_output (same shape as
/// `output`) when non-null.
Real evaluate_loss(const LossSpec& loss, const Mat& output, const Vec& targets,
                   Mat* grad_output);

/// One full-batch gradient step: forward with dropout, backprop of the
/// loss, Adam update. Returns the batch loss; throws std::runtime_error on
/// a non-finite loss or gradient.
Real mlp_train_step(Mlp& model, const Mat& X, const Vec& y,
                    const LossSpec& loss, Real dropout_rate,
                    AdamOptimizer& optimizer, Rng& rng);

}  // namespace offmoo

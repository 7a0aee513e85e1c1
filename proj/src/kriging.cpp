#include "offmoo/kriging.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "offmoo/serialize.hpp"

namespace offmoo {

Real rbf_kernel(const Vec& x, const Vec& x_prime, Real signal_variance,
                Real length_scale) {
  if (x.size() != x_prime.size()) {
    throw std::invalid_argument("rbf_kernel: length mismatch");
  }
  if (!(signal_variance > 0) || !(length_scale > 0)) {
    throw std::invalid_argument("rbf_kernel: parameters must be positive");
  }
  const Real d2 = (x - x_prime).squaredNorm();
  return signal_variance * std::exp(-d2 / (2.0 * length_scale * length_scale));
}

namespace {

constexpr Real kLogLengthLo = -2.99573227355399099;  // ln 0.05
constexpr Real kLogLengthHi = 1.60943791243410037;   // ln 5
constexpr Real kLogSignalLo = -2.30258509299404568;  // ln 0.1
constexpr Real kLogSignalHi = 2.30258509299404568;   // ln 10

Mat pairwise_sqdist(const Mat& X) {
  const Vec sq = X.rowwise().squaredNorm();
  Mat d2 = (-2.0 * X * X.transpose()).rowwise() + sq.transpose();
  d2.colwise() += sq;
  return d2.cwiseMax(0.0);
}

struct Factorization {
  Mat lower;
  Vec dual;
  Real lml = -std::numeric_limits<Real>::infinity();
  bool ok = false;
};

Factorization factorize_gram(const Mat& d2, const Vec& y, Real log_length,
                             Real log_signal, Real nugget) {
  const Real s2 = std::exp(log_signal);
  const Real inv_2l2 = 0.5 * std::exp(-2.0 * log_length);
  Mat gram = s2 * (-d2 * inv_2l2).array().exp().matrix();
  gram.diagonal().array() += nugget;
  Eigen::LLT<Mat> llt(gram);
  Factorization f;
  if (llt.info() != Eigen::Success) return f;
  f.lower = llt.matrixL();
  f.dual = llt.solve(y);
  const auto n = static_cast<Real>(y.size());
  f.lml = -0.5 * y.dot(f.dual) - f.lower.diagonal().array().log().sum() -
          0.5 * n * std::log(2.0 * 3.14159265358979323846);
  f.ok = true;
  return f;
}

// Golden-section maximization of f over [lo, hi].
template <class F>
Real golden_max(F&& f, Real lo, Real hi) {
  constexpr Real kInvPhi = 0.61803398874989485;
  Real a = lo, b = hi;
  Real c = b - kInvPhi * (b - a);
  Real d = a + kInvPhi * (b - a);
  Real fc = f(c), fd = f(d);
  for (int it = 0; it < 40 && (b - a) > 1e-3; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? c : d;
}

}  // namespace

void KrigingModel::factorize() {
  const Mat d2 = pairwise_sqdist(X_);
  // Escalate the nugget a few decades before giving up.
  Real nug = nugget_;
  for (int attempt = 0; attempt < 4; ++attempt, nug *= 10.0) {
    Factorization f = factorize_gram(d2, y_std_, log_length_, log_signal_, nug);
    if (f.ok) {
      nugget_ = nug;
      chol_lower_ = std::move(f.lower);
      dual_ = std::move(f.dual);
      lml_ = f.lml;
      return;
    }
  }
  throw std::runtime_error(
      "kriging fit: Gram matrix not positive definite after nugget escalation");
}

KrigingModel KrigingModel::fit(const Mat& X, const Vec& y,
                               const TrainConfig& cfg) {
  if (X.rows() == 0 || X.rows() != y.size()) {
    throw std::invalid_argument("kriging fit: bad training shapes");
  }
  KrigingModel model;
  model.in_scale_ = InputScaling::fit(X);
  model.out_scale_ = TargetScaling::fit(y);
  model.X_ = model.in_scale_.apply_rows(X);
  model.y_std_ = model.out_scale_.standardize(y);
  model.nugget_ = cfg.nugget;

  const Mat d2 = pairwise_sqdist(model.X_);
  const auto objective = [&](Real log_length, Real log_signal) {
    return factorize_gram(d2, model.y_std_, log_length, log_signal, cfg.nugget)
        .lml;
  };

  Real best_lml = -std::numeric_limits<Real>::infinity();
  Real best_length = 0, best_signal = 0;
  for (int i = 0; i < 4; ++i) {
    const Real start_length =
        kLogLengthLo + (kLogLengthHi - kLogLengthLo) * (0.5 + i) / 4.0;
    for (int j = 0; j < 2; ++j) {
      const Real start_signal =
          kLogSignalLo + (kLogSignalHi - kLogSignalLo) * (0.5 + j) / 2.0;
      Real log_length = start_length;
      Real log_signal = start_signal;
      Real current = objective(log_length, log_signal);
      // Coordinate descent until the marginal likelihood stalls.
      for (int sweep = 0; sweep < 30; ++sweep) {
        log_length = golden_max(
            [&](Real v) { return objective(v, log_signal); }, kLogLengthLo,
            kLogLengthHi);
        log_signal = golden_max(
            [&](Real v) { return objective(log_length, v); }, kLogSignalLo,
            kLogSignalHi);
        const Real updated = objective(log_length, log_signal);
        if (updated - current < 1e-4) {
          current = std::max(current, updated);
          break;
        }
        current = updated;
      }
      if (current > best_lml) {
        best_lml = current;
        best_length = log_length;
        best_signal = log_signal;
      }
    }
  }
  if (std::isfinite(best_lml)) {
    model.log_length_ = best_length;
    model.log_signal_ = best_signal;
  } else {
    // Base nugget too small for every candidate; fall back to mid-range
    // hyperparameters and let factorize() escalate the nugget.
    model.log_length_ = 0.5 * (kLogLengthLo + kLogLengthHi);
    model.log_signal_ = 0.5 * (kLogSignalLo + kLogSignalHi);
  }
  model.factorize();
  return model;
}

UncertainPrediction KrigingModel::predict(const Vec& x, std::uint64_t) const {
  if (dual_.size() == 0) {
    throw std::invalid_argument("kriging predict: model not fitted");
  }
  const Vec z = in_scale_.apply(x);
  const Real s2 = signal_variance();
  const Real inv_2l2 = 0.5 / (length_scale() * length_scale());
  Vec k_star(X_.rows());
  for (Eigen::Index i = 0; i < X_.rows(); ++i) {
    const Real d2 = (X_.row(i).transpose() - z).squaredNorm();
    k_star[i] = s2 * std::exp(-d2 * inv_2l2);
  }
  const Real mean_std = k_star.dot(dual_);
  const Vec v = chol_lower_.triangularView<Eigen::Lower>().solve(k_star);
  const Real var_std = std::max(0.0, s2 - v.squaredNorm());
  UncertainPrediction pred;
  pred.kind = PredictionKind::gaussian_like;
  pred.center = out_scale_.destandardize_center(mean_std);
  pred.spread = out_scale_.destandardize_spread(std::sqrt(var_std));
  return pred;
}

nlohmann::json KrigingModel::to_json() const {
  return nlohmann::json{
      {"model", "kriging"},
      {"input_offset", vec_to_json(in_scale_.offset)},
      {"input_scale", vec_to_json(in_scale_.scale)},
      {"target_mean", real_to_json(out_scale_.mean)},
      {"target_std", real_to_json(out_scale_.std)},
      {"train_inputs", mat_to_json(X_)},
      {"train_targets", vec_to_json(y_std_)},
      {"log_length", real_to_json(log_length_)},
      {"log_signal", real_to_json(log_signal_)},
      {"nugget", real_to_json(nugget_)},
  };
}

KrigingModel KrigingModel::from_json(const nlohmann::json& doc) {
  KrigingModel model;
  model.in_scale_.offset = vec_from_json(doc.at("input_offset"));
  model.in_scale_.scale = vec_from_json(doc.at("input_scale"));
  model.out_scale_.mean = real_from_json(doc.at("target_mean"));
  model.out_scale_.std = real_from_json(doc.at("target_std"));
  model.X_ = mat_from_json(doc.at("train_inputs"));
  model.y_std_ = vec_from_json(doc.at("train_targets"));
  model.log_length_ = real_from_json(doc.at("log_length"));
  model.log_signal_ = real_from_json(doc.at("log_signal"));
  model.nugget_ = real_from_json(doc.at("nugget"));
  model.factorize();
  return model;
}

}  // namespace offmoo

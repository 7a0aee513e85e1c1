#include "offmoo/fitness.hpp"

#include <cmath>
#include <stdexcept>

namespace offmoo {

Real normal_cdf(Real z) {
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

namespace {

// Acklam's rational approximation to the standard normal quantile,
// accurate to ~1.15e-9 relative before refinement.
Real acklam_quantile(Real p) {
  static const Real a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                           -2.759285104469687e+02, 1.383577518672690e+02,
                           -3.066479806614716e+01, 2.506628277459239e+00};
  static const Real b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                           -1.556989798598866e+02, 6.680131188771972e+01,
                           -1.328068155288572e+01};
  static const Real c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                           -2.400758277161838e+00, -2.549732539343734e+00,
                           4.374664141464968e+00,  2.938163982698783e+00};
  static const Real d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                           2.445134137142996e+00, 3.754408661907416e+00};
  constexpr Real p_low = 0.02425;
  if (p < p_low) {
    const Real q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const Real q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const Real q = p - 0.5;
  const Real r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
         q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

Real inverse_normal_cdf(Real p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("inverse_normal_cdf: p must be in (0, 1)");
  }
  Real z = acklam_quantile(p);
  // One Newton step against the high-accuracy CDF.
  const Real density =
      std::exp(-0.5 * z * z) / std::sqrt(2.0 * 3.14159265358979323846);
  if (density > 0) z -= (normal_cdf(z) - p) / density;
  return z;
}

FitnessPair make_fitness_pair(const std::vector<UncertainPrediction>& preds,
                              Real tau) {
  if (preds.empty()) {
    throw std::invalid_argument("make_fitness_pair: no predictions");
  }
  const PredictionKind kind = preds.front().kind;
  for (const auto& p : preds) {
    if (p.kind != kind) {
      throw std::invalid_argument("make_fitness_pair: mixed prediction kinds");
    }
  }
  FitnessPair pair;
  pair.tau = tau;
  pair.z = inverse_normal_cdf(tau);
  pair.original.resize(static_cast<Eigen::Index>(preds.size()));
  pair.adjusted.resize(static_cast<Eigen::Index>(preds.size()));
  for (std::size_t k = 0; k < preds.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    pair.original[i] = preds[k].center;
    pair.adjusted[i] = kind == PredictionKind::quantile
                           ? preds[k].upper()
                           : preds[k].center + pair.z * preds[k].spread;
  }
  return pair;
}

}  // namespace offmoo

#pragma once

#include <vector>

#include "offmoo/surrogate.hpp"
#include "offmoo/types.hpp"

namespace offmoo {

/// Standard normal CDF.
Real normal_cdf(Real z);

/// Quantile of the standard normal: Phi(z) = p to within 1e-9 absolute.
/// Rational approximation refined by one Newton step. Throws for p
/// outside (0, 1).
Real inverse_normal_cdf(Real p);

/// Original and uncertainty-adjusted objective vectors assembled from one
/// surrogate set's predictions.
struct FitnessPair {
  ObjectiveVector original;
  ObjectiveVector adjusted;
  Real tau = 0;
  Real z = 0;  // Phi^{-1}(tau)
};

/// Gaussian-like predictions: original = mu, adjusted = mu + z*sigma.
/// Quantile predictions: original = median, adjusted = upper quantile.
/// All predictions must share one kind.
FitnessPair make_fitness_pair(const std::vector<UncertainPrediction>& preds,
                              Real tau);

}  // namespace offmoo

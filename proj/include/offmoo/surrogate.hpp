#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "offmoo/types.hpp"

namespace offmoo {

enum class SurrogateKind { kriging, qr, mcd, bnn };

std::string to_string(SurrogateKind kind);
SurrogateKind surrogate_kind_from_string(const std::string& name);

enum class PredictionKind { gaussian_like, quantile };

/// A central estimate with a non-negative uncertainty estimate: (mu,
/// sigma) for gaussian-like models, (median, upper - median) for quantile
/// models. upper() >= center holds structurally.
struct UncertainPrediction {
  Real center = 0;
  Real spread = 0;  // >= 0
  PredictionKind kind = PredictionKind::gaussian_like;

  Real upper() const { return center + spread; }
};

struct TrainConfig {
  int epochs = 0;  // <= 0 means the per-kind default (2000 qr/mcd, 3000 bnn)
  Real learning_rate = 1e-3;
  std::uint64_t seed = 42;
  int hidden = 32;
  Real dropout_rate = 0.1;   // mcd
  int mc_passes = 100;       // mcd prediction passes T
  int posterior_samples = 100;  // bnn prediction samples S
  Real nugget = 1e-3;        // kriging diagonal regularization alpha
};

/// One fitted per-objective model.
class Surrogate {
 public:
  virtual ~Surrogate() = default;

  /// sample_seed drives mcd/bnn prediction sampling; deterministic models
  /// ignore it.
  virtual UncertainPrediction predict(const Vec& x,
                                      std::uint64_t sample_seed) const = 0;
  virtual PredictionKind prediction_kind() const = 0;
  virtual nlohmann::json to_json() const = 0;
};

/// K fitted models of one kind, one per objective.
struct SurrogateSet {
  SurrogateKind kind = SurrogateKind::kriging;
  Real tau = 0.9;
  std::vector<std::shared_ptr<const Surrogate>> models;

  int n_objectives() const { return static_cast<int>(models.size()); }
};

/// Fits one model for objective column k of the dataset.
std::shared_ptr<const Surrogate> fit_objective_model(SurrogateKind kind,
                                                     const OfflineDataset& data,
                                                     int objective_index,
                                                     const TrainConfig& cfg,
                                                     Real tau);

/// Fits all K models.
SurrogateSet fit_surrogate_set(SurrogateKind kind, const OfflineDataset& data,
                               const TrainConfig& cfg, Real tau = 0.9);

/// One prediction per objective. Throws if the set is empty (unfitted).
std::vector<UncertainPrediction> predict_all(const SurrogateSet& set,
                                             const Vec& x,
                                             std::uint64_t sample_seed);

/// Versioned JSON document with weights as full-precision decimal strings.
nlohmann::json surrogate_set_to_json(const SurrogateSet& set);
SurrogateSet surrogate_set_from_json(const nlohmann::json& doc);

}  // namespace offmoo

#include "offmoo/surrogate.hpp"

#include <stdexcept>

#include "offmoo/bnn.hpp"
#include "offmoo/kriging.hpp"
#include "offmoo/mc_dropout.hpp"
#include "offmoo/quantile.hpp"

namespace offmoo {

std::string to_string(SurrogateKind kind) {
  switch (kind) {
    case SurrogateKind::kriging: return "kriging";
    case SurrogateKind::qr: return "qr";
    case SurrogateKind::mcd: return "mcd";
    case SurrogateKind::bnn: return "bnn";
  }
  throw std::logic_error("to_string: bad SurrogateKind");
}

SurrogateKind surrogate_kind_from_string(const std::string& name) {
  if (name == "kriging") return SurrogateKind::kriging;
  if (name == "qr") return SurrogateKind::qr;
  if (name == "mcd") return SurrogateKind::mcd;
  if (name == "bnn") return SurrogateKind::bnn;
  throw std::invalid_argument("unknown surrogate '" + name +
                              "'; valid kinds: kriging qr mcd bnn");
}

std::shared_ptr<const Surrogate> fit_objective_model(SurrogateKind kind,
                                                     const OfflineDataset& data,
                                                     int objective_index,
                                                     const TrainConfig& cfg,
                                                     Real tau) {
  if (data.n() == 0) {
    throw std::invalid_argument("fit: empty dataset");
  }
  if (objective_index < 0 || objective_index >= data.Y.cols()) {
    throw std::invalid_argument("fit: objective index out of range");
  }
  const Vec y = data.Y.col(objective_index);
  switch (kind) {
    case SurrogateKind::kriging:
      return std::make_shared<KrigingModel>(
          KrigingModel::fit(data.X, y, cfg));
    case SurrogateKind::qr:
      return std::make_shared<QuantileSurrogate>(
          QuantileSurrogate::fit(data.X, y, cfg, tau));
    case SurrogateKind::mcd:
      return std::make_shared<McDropoutSurrogate>(
          McDropoutSurrogate::fit(data.X, y, cfg));
    case SurrogateKind::bnn:
      return std::make_shared<BayesianNetSurrogate>(
          BayesianNetSurrogate::fit(data.X, y, cfg));
  }
  throw std::logic_error("fit: bad SurrogateKind");
}

SurrogateSet fit_surrogate_set(SurrogateKind kind, const OfflineDataset& data,
                               const TrainConfig& cfg, Real tau) {
  SurrogateSet set;
  set.kind = kind;
  set.tau = tau;
  for (int k = 0; k < data.Y.cols(); ++k) {
    // Decorrelate per-objective model seeds.
    TrainConfig per_objective = cfg;
    per_objective.seed = cfg.seed + static_cast<std::uint64_t>(k);
    set.models.push_back(
        fit_objective_model(kind, data, k, per_objective, tau));
  }
  return set;
}

std::vector<UncertainPrediction> predict_all(const SurrogateSet& set,
                                             const Vec& x,
                                             std::uint64_t sample_seed) {
  if (set.models.empty()) {
    throw std::invalid_argument("predict: surrogate set is not fitted");
  }
  std::vector<UncertainPrediction> preds;
  preds.reserve(set.models.size());
  for (std::size_t k = 0; k < set.models.size(); ++k) {
    preds.push_back(set.models[k]->predict(
        x, sample_seed + 0x9e3779b97f4a7c15ULL * (k + 1)));
  }
  return preds;
}

nlohmann::json surrogate_set_to_json(const SurrogateSet& set) {
  nlohmann::json models = nlohmann::json::array();
  for (const auto& model : set.models) models.push_back(model->to_json());
  return nlohmann::json{
      {"format_version", 1},
      {"kind", to_string(set.kind)},
      {"tau", set.tau},
      {"models", models},
  };
}

SurrogateSet surrogate_set_from_json(const nlohmann::json& doc) {
  if (doc.at("format_version").get<int>() != 1) {
    throw std::invalid_argument("surrogate_set_from_json: unsupported version");
  }
  SurrogateSet set;
  set.kind = surrogate_kind_from_string(doc.at("kind").get<std::string>());
  set.tau = doc.at("tau").get<Real>();
  for (const auto& model_doc : doc.at("models")) {
    switch (set.kind) {
      case SurrogateKind::kriging:
        set.models.push_back(
            std::make_shared<KrigingModel>(KrigingModel::from_json(model_doc)));
        break;
      case SurrogateKind::qr:
        set.models.push_back(std::make_shared<QuantileSurrogate>(
            QuantileSurrogate::from_json(model_doc)));
        break;
      case SurrogateKind::mcd:
        set.models.push_back(std::make_shared<McDropoutSurrogate>(
            McDropoutSurrogate::from_json(model_doc)));
        break;
      case SurrogateKind::bnn:
        set.models.push_back(std::make_shared<BayesianNetSurrogate>(
            BayesianNetSurrogate::from_json(model_doc)));
        break;
    }
  }
  return set;
}

}  // namespace offmoo

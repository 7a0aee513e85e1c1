#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "offmoo/metrics.hpp"
#include "offmoo/moea.hpp"
#include "offmoo/surrogate.hpp"
#include "offmoo/types.hpp"

namespace offmoo {

struct ExperimentConfig {
  std::vector<std::string> problems;
  std::vector<SurrogateKind> surrogates;
  std::vector<int> seeds;  // defaults to 1..30
  Real tau = 0.9;
  std::uint64_t dataset_seed = 42;
  std::string out_dir = "results";
  int workers = 1;
  EngineConfig engine;  // tau and seed are filled per cell
  TrainConfig train;
  std::map<std::string, int> epochs_per_problem;  // neural kinds only
  std::map<std::string, Vec> reference_points;    // pinned per problem
};

/// Parses and validates the JSON config file. Unknown keys, unknown
/// problem or surrogate names, and empty seed lists are rejected with a
/// message naming the offending key.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_json(const nlohmann::json& doc);

struct ResultRecord {
  std::string problem;
  SurrogateKind surrogate = SurrogateKind::kriging;
  int seed = 0;
  Real hv_real = 0;
  Real hv_surrogate = 0;
  Real mse_value = 0;
  Real wall_clock_seconds = 0;
  std::vector<ObjectiveVector> front_surrogate;  // first front, surrogate eval
  std::vector<ObjectiveVector> front_real;       // first front, real eval
  bool failed = false;
  std::string error;
};

struct AggregateRow {
  std::string problem;
  SurrogateKind surrogate = SurrogateKind::kriging;
  Real hv_mean = 0, hv_std = 0;    // real-evaluated HV
  Real mse_mean = 0, mse_std = 0;
  int n_runs = 0;
};

/// Runs every (problem, surrogate, seed) cell, up to `workers` at a time.
/// Completed cells found on disk are loaded instead of re-run; per-cell
/// failures are recorded without aborting the batch. Outputs land under
/// cfg.out_dir as documented in the README.
std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg);

/// Aggregates completed records per (problem, surrogate) cell in config
/// order, population standard deviation over the seed set.
std::vector<AggregateRow> aggregate_records(
    const ExperimentConfig& cfg, const std::vector<ResultRecord>& records);

/// Writes all experiment outputs: one front.csv + result.json per record,
/// summary.csv, and the summary.json mirror. Timing fields stay out of
/// the summary so identical configs emit byte-identical summaries.
void emit_outputs(const std::vector<ResultRecord>& records,
                  const ExperimentConfig& cfg);

/// Per-problem HV reference points: pinned by the config when given,
/// else derived from the offline dataset objectives and persisted to
/// <out>/reference_points.json so reruns reuse the identical point.
std::map<std::string, HVConfig> resolve_reference_points(
    const ExperimentConfig& cfg);

nlohmann::json record_to_json(const ResultRecord& record);
ResultRecord record_from_json(const nlohmann::json& doc);

void write_summary_csv(const std::vector<AggregateRow>& rows,
                       std::ostream& out);
std::vector<AggregateRow> read_summary_csv(std::istream& in);

}  // namespace offmoo

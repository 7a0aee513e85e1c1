#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "offmoo/experiment.hpp"
#include "offmoo/problems.hpp"
#include "offmoo/sampling.hpp"

namespace {

int cmd_problems() {
  for (const auto& name : offmoo::catalog_names()) {
    const offmoo::Problem p = offmoo::catalog_lookup(name);
    std::cout << name << "  D=" << p.dim << "  K=" << p.n_objectives
              << "  C=" << p.n_constraints << '\n';
  }
  return 0;
}

int cmd_dataset(const std::string& problem_name, std::uint64_t seed,
                int n_samples, const std::string& out_path) {
  const offmoo::Problem problem = offmoo::catalog_lookup(problem_name);
  const offmoo::OfflineDataset dataset = offmoo::build_offline_dataset(
      problem, offmoo::SamplingConfig{n_samples, seed});
  if (out_path.empty()) {
    offmoo::write_dataset_csv(dataset, std::cout);
  } else {
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return 1;
    }
    offmoo::write_dataset_csv(dataset, out);
    std::cerr << "wrote " << dataset.n() << " samples to " << out_path << '\n';
  }
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_override,
            int workers_override) {
  offmoo::ExperimentConfig cfg = offmoo::parse_config(config_path);
  if (const char* env_out = std::getenv("OFFMOO_OUT");
      env_out != nullptr && *env_out != '\0') {
    cfg.out_dir = env_out;
  }
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (workers_override > 0) cfg.workers = workers_override;

  const auto records = offmoo::run_experiment(cfg);
  int failures = 0;
  for (const auto& record : records) {
    if (record.failed) {
      ++failures;
      std::cerr << "run failed: " << record.problem << '/'
                << offmoo::to_string(record.surrogate) << "/seed_"
                << record.seed << ": " << record.error << '\n';
    }
  }
  const auto rows = offmoo::aggregate_records(cfg, records);
  for (const auto& row : rows) {
    std::cout << row.problem << '/' << offmoo::to_string(row.surrogate)
              << ": hv " << row.hv_mean << " +- " << row.hv_std << ", mse "
              << row.mse_mean << " +- " << row.mse_std << " (" << row.n_runs
              << " runs)";
    if (row.n_runs == 1) std::cout << " [single seed: std is 0 by convention]";
    std::cout << '\n';
  }
  std::cout << "summary written to " << cfg.out_dir << "/summary.csv\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Offline data-driven multi-objective optimization with "
               "dual-ranking NSGA-II"};
  app.require_subcommand(1);

  auto* problems = app.add_subcommand("problems", "List the problem catalog");

  std::string dataset_problem;
  std::uint64_t dataset_seed = 42;
  int dataset_n = 0;
  std::string dataset_out;
  auto* dataset =
      app.add_subcommand("dataset", "Emit an offline dataset as CSV");
  dataset->add_option("--problem", dataset_problem, "Catalog problem name")
      ->required();
  dataset->add_option("--seed", dataset_seed, "Sampling seed (default 42)");
  dataset->add_option("--n", dataset_n,
                      "Sample count (default 11*D - 1)");
  dataset->add_option("--out", dataset_out, "Output file (default stdout)");

  std::string run_config;
  std::string run_out;
  int run_workers = 0;
  auto* run = app.add_subcommand("run", "Run a batch experiment");
  run->add_option("--config", run_config, "Experiment config file (JSON)")
      ->required();
  run->add_option("--out", run_out, "Output directory override");
  run->add_option("--workers", run_workers, "Concurrent run count override");

  CLI11_PARSE(app, argc, argv);

  try {
    if (problems->parsed()) return cmd_problems();
    if (dataset->parsed()) {
      return cmd_dataset(dataset_problem, dataset_seed, dataset_n, dataset_out);
    }
    if (run->parsed()) return cmd_run(run_config, run_out, run_workers);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

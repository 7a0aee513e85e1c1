#include "offmoo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "offmoo/metrics.hpp"
#include "offmoo/num_format.hpp"
#include "offmoo/problems.hpp"
#include "offmoo/ranking.hpp"
#include "offmoo/sampling.hpp"

namespace offmoo {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void config_error(const std::string& where,
                               const std::string& what) {
  throw std::invalid_argument("config error at '" + where + "': " + what);
}

void reject_unknown_keys(const nlohmann::json& obj, const std::string& where,
                         const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      config_error(where + "." + key, "unknown key");
    }
  }
}

template <class T>
T get_or(const nlohmann::json& obj, const std::string& key, T fallback) {
  if (!obj.contains(key)) return fallback;
  return obj.at(key).get<T>();
}

}  // namespace

ExperimentConfig parse_config_json(const nlohmann::json& doc) {
  if (!doc.is_object()) config_error("<root>", "expected a JSON object");
  reject_unknown_keys(doc, "<root>",
                      {"problems", "surrogates", "seeds", "tau",
                       "dataset_seed", "out_dir", "workers", "engine", "train",
                       "epochs_per_problem", "reference_points"});

  ExperimentConfig cfg;
  if (!doc.contains("problems") || !doc.at("problems").is_array() ||
      doc.at("problems").empty()) {
    config_error("problems", "required non-empty list of catalog names");
  }
  for (const auto& name : doc.at("problems")) {
    const auto problem = name.get<std::string>();
    catalog_lookup(problem);  // validates against the catalog
    cfg.problems.push_back(problem);
  }

  if (!doc.contains("surrogates") || !doc.at("surrogates").is_array() ||
      doc.at("surrogates").empty()) {
    config_error("surrogates", "required non-empty list of surrogate kinds");
  }
  for (const auto& name : doc.at("surrogates")) {
    cfg.surrogates.push_back(
        surrogate_kind_from_string(name.get<std::string>()));
  }

  if (doc.contains("seeds")) {
    if (!doc.at("seeds").is_array() || doc.at("seeds").empty()) {
      config_error("seeds", "seeds non-empty");
    }
    for (const auto& s : doc.at("seeds")) cfg.seeds.push_back(s.get<int>());
  } else {
    for (int s = 1; s <= 30; ++s) cfg.seeds.push_back(s);
  }

  cfg.tau = get_or(doc, "tau", cfg.tau);
  if (!(cfg.tau > 0 && cfg.tau < 1)) config_error("tau", "must be in (0, 1)");
  cfg.dataset_seed = get_or(doc, "dataset_seed", cfg.dataset_seed);
  cfg.out_dir = get_or(doc, "out_dir", cfg.out_dir);
  cfg.workers = get_or(doc, "workers", cfg.workers);
  if (cfg.workers < 1) config_error("workers", "must be >= 1");

  if (doc.contains("engine")) {
    const auto& engine = doc.at("engine");
    reject_unknown_keys(engine, "engine",
                        {"population", "generations", "crossover_prob",
                         "eta_crossover", "mutation_prob", "eta_mutation"});
    cfg.engine.population = get_or(engine, "population", cfg.engine.population);
    cfg.engine.generations =
        get_or(engine, "generations", cfg.engine.generations);
    cfg.engine.crossover_prob =
        get_or(engine, "crossover_prob", cfg.engine.crossover_prob);
    cfg.engine.eta_crossover =
        get_or(engine, "eta_crossover", cfg.engine.eta_crossover);
    cfg.engine.mutation_prob =
        get_or(engine, "mutation_prob", cfg.engine.mutation_prob);
    cfg.engine.eta_mutation =
        get_or(engine, "eta_mutation", cfg.engine.eta_mutation);
    if (cfg.engine.population < 2) config_error("engine.population", "too small");
    if (cfg.engine.generations < 1) config_error("engine.generations", "too small");
  }

  if (doc.contains("train")) {
    const auto& train = doc.at("train");
    reject_unknown_keys(train, "train",
                        {"epochs", "learning_rate", "seed", "hidden",
                         "dropout_rate", "mc_passes", "posterior_samples",
                         "nugget"});
    cfg.train.epochs = get_or(train, "epochs", cfg.train.epochs);
    cfg.train.learning_rate =
        get_or(train, "learning_rate", cfg.train.learning_rate);
    cfg.train.seed = get_or(train, "seed", cfg.train.seed);
    cfg.train.hidden = get_or(train, "hidden", cfg.train.hidden);
    cfg.train.dropout_rate =
        get_or(train, "dropout_rate", cfg.train.dropout_rate);
    cfg.train.mc_passes = get_or(train, "mc_passes", cfg.train.mc_passes);
    cfg.train.posterior_samples =
        get_or(train, "posterior_samples", cfg.train.posterior_samples);
    cfg.train.nugget = get_or(train, "nugget", cfg.train.nugget);
    if (!(cfg.train.learning_rate > 0)) {
      config_error("train.learning_rate", "must be > 0");
    }
  }

  if (doc.contains("epochs_per_problem")) {
    for (const auto& [problem, epochs] : doc.at("epochs_per_problem").items()) {
      catalog_lookup(problem);
      cfg.epochs_per_problem[problem] = epochs.get<int>();
    }
  }

  if (doc.contains("reference_points")) {
    for (const auto& [problem, point] : doc.at("reference_points").items()) {
      const Problem p = catalog_lookup(problem);
      if (!point.is_array() ||
          static_cast<int>(point.size()) != p.n_objectives) {
        config_error("reference_points." + problem,
                     "expected " + std::to_string(p.n_objectives) + " numbers");
      }
      Vec ref(p.n_objectives);
      for (int k = 0; k < p.n_objectives; ++k) {
        ref[k] = point[static_cast<std::size_t>(k)].get<Real>();
      }
      cfg.reference_points[problem] = ref;
    }
  }
  return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config file not readable: " + path);
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config file " + path + ": " + e.what());
  }
  return parse_config_json(doc);
}

namespace {

fs::path cell_dir(const ExperimentConfig& cfg, const std::string& problem,
                  SurrogateKind kind, int seed) {
  return fs::path(cfg.out_dir) / problem / to_string(kind) /
         ("seed_" + std::to_string(seed));
}

std::vector<ObjectiveVector> first_front_points(
    const std::vector<Evaluation>& evals) {
  const FrontPartition partition = non_dominated_sort(evals);
  std::vector<ObjectiveVector> points;
  for (int i : partition.fronts.front()) {
    points.push_back(evals[static_cast<std::size_t>(i)].objectives);
  }
  return points;
}

ResultRecord evaluate_cell(const ExperimentConfig& cfg,
                           const std::string& problem_name, SurrogateKind kind,
                           int seed, const Vec& reference_point) {
  ResultRecord record;
  record.problem = problem_name;
  record.surrogate = kind;
  record.seed = seed;

  const auto started = std::chrono::steady_clock::now();
  const Problem problem = catalog_lookup(problem_name);

  EngineConfig engine = cfg.engine;
  engine.tau = cfg.tau;
  engine.seed = static_cast<std::uint64_t>(seed);
  TrainConfig train = cfg.train;
  if (const auto it = cfg.epochs_per_problem.find(problem_name);
      it != cfg.epochs_per_problem.end()) {
    train.epochs = it->second;
  }
  const SamplingConfig sampling{0, cfg.dataset_seed};

  const RunResult result = run(problem, kind, engine, sampling, train);

  std::vector<Evaluation> surrogate_evals;
  surrogate_evals.reserve(result.final_population.size());
  Mat surrogate_objs(static_cast<Eigen::Index>(result.final_population.size()),
                     problem.n_objectives);
  Mat real_objs(surrogate_objs.rows(), surrogate_objs.cols());
  for (std::size_t i = 0; i < result.final_population.size(); ++i) {
    surrogate_evals.push_back(result.final_population[i].eval_original);
    surrogate_objs.row(static_cast<Eigen::Index>(i)) =
        result.final_population[i].eval_original.objectives;
    real_objs.row(static_cast<Eigen::Index>(i)) =
        result.real_evaluations[i].objectives;
  }
  record.front_surrogate = first_front_points(surrogate_evals);
  record.front_real = first_front_points(result.real_evaluations);
  record.hv_surrogate = hypervolume_2d(record.front_surrogate, reference_point);
  record.hv_real = hypervolume_2d(record.front_real, reference_point);
  record.mse_value = mse(real_objs, surrogate_objs);
  record.wall_clock_seconds =
      std::chrono::duration<Real>(std::chrono::steady_clock::now() - started)
          .count();
  return record;
}

void write_text_atomic(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write output file " + tmp.string());
    }
    out << text;
  }
  fs::rename(tmp, path);
}

void write_front_csv(const fs::path& path, const ResultRecord& record) {
  std::ostringstream out;
  out << "mode,f_1,f_2\n";
  for (const auto& p : record.front_surrogate) {
    out << "sur," << format_real(p[0]) << ',' << format_real(p[1]) << '\n';
  }
  for (const auto& p : record.front_real) {
    out << "real," << format_real(p[0]) << ',' << format_real(p[1]) << '\n';
  }
  write_text_atomic(path, out.str());
}

nlohmann::json front_to_json(const std::vector<ObjectiveVector>& front) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : front) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < p.size(); ++k) row.push_back(p[k]);
    arr.push_back(row);
  }
  return arr;
}

std::vector<ObjectiveVector> front_from_json(const nlohmann::json& arr) {
  std::vector<ObjectiveVector> front;
  for (const auto& row : arr) {
    Vec p(static_cast<Eigen::Index>(row.size()));
    for (std::size_t k = 0; k < row.size(); ++k) {
      p[static_cast<Eigen::Index>(k)] = row[k].get<Real>();
    }
    front.push_back(std::move(p));
  }
  return front;
}

}  // namespace

nlohmann::json record_to_json(const ResultRecord& record) {
  return nlohmann::json{
      {"problem", record.problem},
      {"surrogate", to_string(record.surrogate)},
      {"seed", record.seed},
      {"hv_real", record.hv_real},
      {"hv_surrogate", record.hv_surrogate},
      {"mse", record.mse_value},
      {"wall_clock_seconds", record.wall_clock_seconds},
      {"front_surrogate", front_to_json(record.front_surrogate)},
      {"front_real", front_to_json(record.front_real)},
      {"failed", record.failed},
      {"error", record.error},
  };
}

ResultRecord record_from_json(const nlohmann::json& doc) {
  ResultRecord record;
  record.problem = doc.at("problem").get<std::string>();
  record.surrogate =
      surrogate_kind_from_string(doc.at("surrogate").get<std::string>());
  record.seed = doc.at("seed").get<int>();
  record.hv_real = doc.at("hv_real").get<Real>();
  record.hv_surrogate = doc.at("hv_surrogate").get<Real>();
  record.mse_value = doc.at("mse").get<Real>();
  record.wall_clock_seconds = doc.at("wall_clock_seconds").get<Real>();
  record.front_surrogate = front_from_json(doc.at("front_surrogate"));
  record.front_real = front_from_json(doc.at("front_real"));
  record.failed = doc.at("failed").get<bool>();
  record.error = doc.at("error").get<std::string>();
  return record;
}

std::map<std::string, HVConfig> resolve_reference_points(
    const ExperimentConfig& cfg) {
  const fs::path persisted = fs::path(cfg.out_dir) / "reference_points.json";
  std::map<std::string, HVConfig> points;
  if (fs::exists(persisted)) {
    std::ifstream in(persisted);
    const auto doc = nlohmann::json::parse(in);
    for (const auto& [problem, arr] : doc.items()) {
      Vec ref(static_cast<Eigen::Index>(arr.size()));
      for (std::size_t k = 0; k < arr.size(); ++k) {
        ref[static_cast<Eigen::Index>(k)] = arr[k].get<Real>();
      }
      points[problem] = HVConfig{ref, HVConfig::Source::derived};
    }
  }
  bool changed = false;
  for (const auto& problem_name : cfg.problems) {
    if (const auto pinned = cfg.reference_points.find(problem_name);
        pinned != cfg.reference_points.end()) {
      changed = changed || !points.contains(problem_name);
      points[problem_name] =
          HVConfig{pinned->second, HVConfig::Source::configured};
      continue;
    }
    if (points.contains(problem_name)) continue;
    const Problem problem = catalog_lookup(problem_name);
    const OfflineDataset dataset =
        build_offline_dataset(problem, SamplingConfig{0, cfg.dataset_seed});
    const ReferencePoint derived = derive_reference_point(dataset.Y, {});
    if (derived.degenerate) {
      std::cerr << "warning: reference point for " << problem_name
                << " has zero extent in some objective\n";
    }
    points[problem_name] = HVConfig{derived.value, HVConfig::Source::derived};
    changed = true;
  }
  if (changed) {
    fs::create_directories(cfg.out_dir);
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [problem, hv] : points) {
      nlohmann::json arr = nlohmann::json::array();
      for (Eigen::Index k = 0; k < hv.reference.size(); ++k) {
        arr.push_back(hv.reference[k]);
      }
      doc[problem] = arr;
    }
    write_text_atomic(persisted, doc.dump(2) + "\n");
  }
  return points;
}

std::vector<AggregateRow> aggregate_records(
    const ExperimentConfig& cfg, const std::vector<ResultRecord>& records) {
  std::vector<AggregateRow> rows;
  for (const auto& problem : cfg.problems) {
    for (const auto kind : cfg.surrogates) {
      AggregateRow row;
      row.problem = problem;
      row.surrogate = kind;
      Real hv_sum = 0, hv_sq = 0, mse_sum = 0, mse_sq = 0;
      for (const auto& record : records) {
        if (record.problem != problem || record.surrogate != kind ||
            record.failed) {
          continue;
        }
        ++row.n_runs;
        hv_sum += record.hv_real;
        hv_sq += record.hv_real * record.hv_real;
        mse_sum += record.mse_value;
        mse_sq += record.mse_value * record.mse_value;
      }
      if (row.n_runs > 0) {
        const Real n = static_cast<Real>(row.n_runs);
        row.hv_mean = hv_sum / n;
        row.hv_std = std::sqrt(std::max(0.0, hv_sq / n - row.hv_mean * row.hv_mean));
        row.mse_mean = mse_sum / n;
        row.mse_std =
            std::sqrt(std::max(0.0, mse_sq / n - row.mse_mean * row.mse_mean));
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_summary_csv(const std::vector<AggregateRow>& rows,
                       std::ostream& out) {
  out << "problem,surrogate,hv_mean,hv_std,mse_mean,mse_std,n_runs\n";
  for (const auto& row : rows) {
    out << row.problem << ',' << to_string(row.surrogate) << ','
        << format_real(row.hv_mean) << ',' << format_real(row.hv_std) << ','
        << format_real(row.mse_mean) << ',' << format_real(row.mse_std) << ','
        << row.n_runs << '\n';
  }
}

std::vector<AggregateRow> read_summary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      line != "problem,surrogate,hv_mean,hv_std,mse_mean,mse_std,n_runs") {
    throw std::invalid_argument("read_summary_csv: bad header");
  }
  std::vector<AggregateRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    AggregateRow row;
    std::getline(fields, row.problem, ',');
    std::getline(fields, field, ',');
    row.surrogate = surrogate_kind_from_string(field);
    std::getline(fields, field, ',');
    row.hv_mean = parse_real(field);
    std::getline(fields, field, ',');
    row.hv_std = parse_real(field);
    std::getline(fields, field, ',');
    row.mse_mean = parse_real(field);
    std::getline(fields, field, ',');
    row.mse_std = parse_real(field);
    std::getline(fields, field, ',');
    row.n_runs = std::stoi(field);
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit_outputs(const std::vector<ResultRecord>& records,
                  const ExperimentConfig& cfg) {
  if (records.empty()) {
    throw std::invalid_argument("emit_outputs: no records");
  }
  for (const auto& record : records) {
    const fs::path dir =
        cell_dir(cfg, record.problem, record.surrogate, record.seed);
    fs::create_directories(dir);
    write_text_atomic(dir / "result.json",
                      record_to_json(record).dump(2) + "\n");
    if (!record.failed) write_front_csv(dir / "front.csv", record);
  }
  const auto rows = aggregate_records(cfg, records);
  std::ostringstream csv;
  write_summary_csv(rows, csv);
  write_text_atomic(fs::path(cfg.out_dir) / "summary.csv", csv.str());

  nlohmann::json mirror = nlohmann::json::array();
  for (const auto& row : rows) {
    mirror.push_back(nlohmann::json{
        {"problem", row.problem},
        {"surrogate", to_string(row.surrogate)},
        {"hv_mean", row.hv_mean},
        {"hv_std", row.hv_std},
        {"mse_mean", row.mse_mean},
        {"mse_std", row.mse_std},
        {"n_runs", row.n_runs},
        {"single_seed", row.n_runs == 1},
    });
  }
  write_text_atomic(fs::path(cfg.out_dir) / "summary.json",
                    mirror.dump(2) + "\n");
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& cfg) {
  const auto reference_points = resolve_reference_points(cfg);

  struct Cell {
    std::string problem;
    SurrogateKind kind;
    int seed;
  };
  std::vector<Cell> cells;
  for (const auto& problem : cfg.problems) {
    for (const auto kind : cfg.surrogates) {
      for (const int seed : cfg.seeds) {
        cells.push_back({problem, kind, seed});
      }
    }
  }

  std::vector<ResultRecord> records(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex io_mutex;

  const auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell& cell = cells[i];
      const fs::path dir = cell_dir(cfg, cell.problem, cell.kind, cell.seed);
      const fs::path record_path = dir / "result.json";
      ResultRecord record;
      bool loaded = false;
      if (fs::exists(record_path)) {
        // Completed (or deterministically failed) cell: reuse it. A record
        // that does not parse is treated as absent and recomputed.
        try {
          std::ifstream in(record_path);
          record = record_from_json(nlohmann::json::parse(in));
          loaded = true;
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(io_mutex);
          std::cerr << "warning: ignoring unreadable record "
                    << record_path.string() << ": " << e.what() << '\n';
        }
      }
      if (!loaded) {
        try {
          record = evaluate_cell(cfg, cell.problem, cell.kind, cell.seed,
                                 reference_points.at(cell.problem).reference);
        } catch (const std::exception& e) {
          record.problem = cell.problem;
          record.surrogate = cell.kind;
          record.seed = cell.seed;
          record.failed = true;
          record.error = e.what();
        }
        std::lock_guard<std::mutex> lock(io_mutex);
        try {
          fs::create_directories(dir);
          write_text_atomic(record_path, record_to_json(record).dump(2) + "\n");
          if (!record.failed) write_front_csv(dir / "front.csv", record);
        } catch (const std::exception& e) {
          // Keep the in-memory record; emit_outputs surfaces a persistent
          // write failure as the user-facing error.
          std::cerr << "warning: could not persist " << record_path.string()
                    << ": " << e.what() << '\n';
        }
      }
      records[i] = std::move(record);
    }
  };

  const int n_workers =
      std::min<int>(cfg.workers, static_cast<int>(cells.size()));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  emit_outputs(records, cfg);
  return records;
}

}  // namespace offmoo

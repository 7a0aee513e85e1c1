#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "offmoo/experiment.hpp"

using namespace offmoo;
namespace fs = std::filesystem;

namespace {

nlohmann::json minimal_config() {
  return nlohmann::json{{"problems", {"dtlz2"}}, {"surrogates", {"kriging"}}};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("offmoo_test_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

nlohmann::json tiny_experiment(const fs::path& out) {
  // Two seeds of a deliberately small engine so the suite stays fast.
  return nlohmann::json{
      {"problems", {"bnh"}},
      {"surrogates", {"qr"}},
      {"seeds", {1, 2}},
      {"out_dir", out.string()},
      {"engine", {{"population", 10}, {"generations", 3}}},
      {"train", {{"epochs", 40}}},
  };
}

}  // namespace

TEST_CASE("parse_config applies the experimental defaults") {
  const ExperimentConfig cfg = parse_config_json(minimal_config());
  CHECK(cfg.problems == std::vector<std::string>{"dtlz2"});
  REQUIRE(cfg.surrogates.size() == 1);
  CHECK(cfg.surrogates[0] == SurrogateKind::kriging);
  CHECK(cfg.seeds.size() == 30);
  CHECK(cfg.seeds.front() == 1);
  CHECK(cfg.seeds.back() == 30);
  CHECK(cfg.tau == 0.9);
  CHECK(cfg.dataset_seed == 42);
  CHECK(cfg.engine.population == 100);
  CHECK(cfg.engine.generations == 100);
  CHECK(cfg.engine.crossover_prob == 1.0);
  CHECK(cfg.engine.eta_crossover == 20.0);
  CHECK(cfg.engine.eta_mutation == 20.0);
}

TEST_CASE("parse_config rejects bad input with located messages") {
  auto unknown_surrogate = minimal_config();
  unknown_surrogate["surrogates"] = {"gp"};
  CHECK_THROWS_WITH_AS(parse_config_json(unknown_surrogate),
                       doctest::Contains("unknown surrogate"),
                       std::invalid_argument);

  auto empty_seeds = minimal_config();
  empty_seeds["seeds"] = nlohmann::json::array();
  CHECK_THROWS_WITH_AS(parse_config_json(empty_seeds),
                       doctest::Contains("seeds non-empty"),
                       std::invalid_argument);

  auto unknown_key = minimal_config();
  unknown_key["populatoin"] = 10;
  CHECK_THROWS_WITH_AS(parse_config_json(unknown_key),
                       doctest::Contains("unknown key"), std::invalid_argument);

  auto nested_unknown = minimal_config();
  nested_unknown["engine"] = {{"pop_size", 10}};
  CHECK_THROWS_WITH_AS(parse_config_json(nested_unknown),
                       doctest::Contains("engine.pop_size"),
                       std::invalid_argument);

  auto bad_problem = minimal_config();
  bad_problem["problems"] = {"modact_cs1"};
  CHECK_THROWS_WITH_AS(parse_config_json(bad_problem),
                       doctest::Contains("unknown problem"),
                       std::invalid_argument);

  CHECK_THROWS_WITH_AS(parse_config("/nonexistent/config.json"),
                       doctest::Contains("not readable"),
                       std::invalid_argument);
}

TEST_CASE("summary csv round-trips aggregates exactly") {
  std::vector<AggregateRow> rows(2);
  rows[0] = {"dtlz2", SurrogateKind::kriging, 0.123456789012345, 0.01, 2.5e-3,
             1e-4, 30};
  rows[1] = {"bnh", SurrogateKind::qr, 5000.25, 12.75, 0.0, 0.0, 1};
  std::stringstream buffer;
  write_summary_csv(rows, buffer);
  const auto parsed = read_summary_csv(buffer);
  REQUIRE(parsed.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(parsed[i].problem == rows[i].problem);
    CHECK(parsed[i].surrogate == rows[i].surrogate);
    CHECK(parsed[i].hv_mean == rows[i].hv_mean);
    CHECK(parsed[i].hv_std == rows[i].hv_std);
    CHECK(parsed[i].mse_mean == rows[i].mse_mean);
    CHECK(parsed[i].mse_std == rows[i].mse_std);
    CHECK(parsed[i].n_runs == rows[i].n_runs);
  }
}

TEST_CASE("record json round-trip") {
  ResultRecord record;
  record.problem = "bnh";
  record.surrogate = SurrogateKind::mcd;
  record.seed = 17;
  record.hv_real = 1234.5678901234567;
  record.hv_surrogate = 1200.0;
  record.mse_value = 0.25;
  record.wall_clock_seconds = 1.5;
  Vec p(2);
  p << 0.1, 0.9;
  record.front_real.push_back(p);
  record.front_surrogate.push_back(p * 2);
  const ResultRecord loaded = record_from_json(
      nlohmann::json::parse(record_to_json(record).dump()));
  CHECK(loaded.problem == record.problem);
  CHECK(loaded.surrogate == record.surrogate);
  CHECK(loaded.seed == record.seed);
  CHECK(loaded.hv_real == record.hv_real);
  CHECK(loaded.mse_value == record.mse_value);
  REQUIRE(loaded.front_real.size() == 1);
  CHECK(loaded.front_real[0] == record.front_real[0]);
  CHECK(loaded.front_surrogate[0] == record.front_surrogate[0]);
  CHECK_FALSE(loaded.failed);
}

TEST_CASE("tiny experiment: outputs, aggregates, resume, determinism") {
  const TempDir dir_a("run_a");
  const TempDir dir_b("run_b");

  const ExperimentConfig cfg_a =
      parse_config_json(tiny_experiment(dir_a.path / "out"));
  const auto records = run_experiment(cfg_a);
  REQUIRE(records.size() == 2);
  for (const auto& record : records) {
    CHECK_FALSE(record.failed);
    CHECK(record.hv_real >= 0.0);
    CHECK(record.hv_surrogate >= 0.0);
    CHECK(record.mse_value >= 0.0);
    CHECK_FALSE(record.front_real.empty());
    const fs::path cell = fs::path(cfg_a.out_dir) / "bnh" / "qr" /
                          ("seed_" + std::to_string(record.seed));
    CHECK(fs::exists(cell / "front.csv"));
    CHECK(fs::exists(cell / "result.json"));
    const std::string front = slurp(cell / "front.csv");
    CHECK(front.rfind("mode,f_1,f_2\n", 0) == 0);
    CHECK(front.find("sur,") != std::string::npos);
    CHECK(front.find("real,") != std::string::npos);
  }
  CHECK(fs::exists(fs::path(cfg_a.out_dir) / "summary.csv"));
  CHECK(fs::exists(fs::path(cfg_a.out_dir) / "summary.json"));
  CHECK(fs::exists(fs::path(cfg_a.out_dir) / "reference_points.json"));

  // Aggregates recomputed from the records equal the emitted summary.
  const auto rows = aggregate_records(cfg_a, records);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n_runs == 2);
  std::stringstream recomputed;
  write_summary_csv(rows, recomputed);
  const std::string summary_a = slurp(fs::path(cfg_a.out_dir) / "summary.csv");
  CHECK(summary_a == recomputed.str());

  // Resume: a second invocation must load the persisted records and
  // reproduce the summary byte for byte.
  const auto resumed = run_experiment(cfg_a);
  REQUIRE(resumed.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(resumed[i].hv_real == records[i].hv_real);
    CHECK(resumed[i].mse_value == records[i].mse_value);
    // Wall clock is part of the persisted record, so even it survives.
    CHECK(resumed[i].wall_clock_seconds == records[i].wall_clock_seconds);
  }
  CHECK(slurp(fs::path(cfg_a.out_dir) / "summary.csv") == summary_a);

  // Determinism: an identical config into a fresh directory produces a
  // byte-identical summary (no timing fields are in the summary).
  ExperimentConfig cfg_b =
      parse_config_json(tiny_experiment(dir_b.path / "out"));
  cfg_b.workers = 2;  // concurrency must not change the outcome
  run_experiment(cfg_b);
  CHECK(slurp(fs::path(cfg_b.out_dir) / "summary.csv") == summary_a);
  CHECK(slurp(fs::path(cfg_b.out_dir) / "summary.json") ==
        slurp(fs::path(cfg_a.out_dir) / "summary.json"));
}

TEST_CASE("a corrupt persisted record is recomputed instead of crashing") {
  const TempDir dir("corrupt");
  const ExperimentConfig cfg =
      parse_config_json(tiny_experiment(dir.path / "out"));
  const auto records = run_experiment(cfg);
  REQUIRE(records.size() == 2);
  const fs::path record_path =
      fs::path(cfg.out_dir) / "bnh" / "qr" / "seed_1" / "result.json";
  {
    std::ofstream out(record_path, std::ios::trunc);
    out << "{ truncated";
  }
  const auto resumed = run_experiment(cfg);
  REQUIRE(resumed.size() == 2);
  CHECK(resumed[0].hv_real == records[0].hv_real);  // recomputed, identical
  CHECK(resumed[1].hv_real == records[1].hv_real);
}

TEST_CASE("failed cells are excluded from aggregates") {
  ExperimentConfig cfg = parse_config_json(minimal_config());
  cfg.seeds = {1, 2, 3};
  ResultRecord good_a{"dtlz2", SurrogateKind::kriging, 1, 10.0, 9.0, 0.5, 1.0};
  ResultRecord good_b{"dtlz2", SurrogateKind::kriging, 2, 14.0, 9.0, 0.7, 1.0};
  ResultRecord bad{"dtlz2", SurrogateKind::kriging, 3};
  bad.failed = true;
  bad.error = "synthetic failure";
  const auto rows = aggregate_records(cfg, {good_a, good_b, bad});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n_runs == 2);
  CHECK(rows[0].hv_mean == doctest::Approx(12.0));
  CHECK(rows[0].hv_std == doctest::Approx(2.0));  // population formula
  CHECK(rows[0].mse_mean == doctest::Approx(0.6));
}

TEST_CASE("emit_outputs rejects an empty record list") {
  const ExperimentConfig cfg = parse_config_json(minimal_config());
  CHECK_THROWS_AS(emit_outputs({}, cfg), std::invalid_argument);
}

TEST_CASE("reference points are pinned by config when provided") {
  const TempDir dir("refpin");
  auto doc = tiny_experiment(dir.path / "out");
  doc["reference_points"] = {{"bnh", {150.0, 60.0}}};
  const ExperimentConfig cfg = parse_config_json(doc);
  const auto points = resolve_reference_points(cfg);
  REQUIRE(points.contains("bnh"));
  CHECK(points.at("bnh").reference[0] == 150.0);
  CHECK(points.at("bnh").reference[1] == 60.0);
  CHECK(points.at("bnh").source == HVConfig::Source::configured);
}

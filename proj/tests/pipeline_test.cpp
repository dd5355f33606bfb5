#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "pkgraph/error.hpp"
#include "pkgraph/pipeline.hpp"

namespace pkgraph::pipeline {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json small_config(const fs::path& workdir) {
  json j = json::parse(R"({
    "seed": 5,
    "cohort": {"n_patients": 300, "readmission_rate": 0.3},
    "train": {"epochs": 2, "hidden1": 8, "hidden2": 4},
    "protocol": {"n_splits": 2, "k_folds": 2},
    "experiments": {"versions": ["v3"], "directions": ["undirected"],
                    "baselines": ["knn", "naive_bayes"]}
  })");
  j["workdir"] = workdir.string();
  return j;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("pkgraph_pipeline_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int cli(const std::string& args) {
  const std::string cmd = std::string(PKGRAPH_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Config, DefaultsRoundTrip) {
  const PipelineConfig c;
  const auto back = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(Config, UnknownKeysRejected) {
  EXPECT_THROW(config_from_json(json::parse(R"({"sed": 1})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"train": {"epoch": 3}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"cohort": {"missingness": {"gender": 0.1}}})")),
               ConfigError);
}

TEST(Config, BadValuesRejected) {
  EXPECT_THROW(config_from_json(json::parse(R"({"train": {"epochs": "ten"}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"protocol": {"k_folds": 1}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"experiments": {"versions": ["v7"]}})")),
               ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"experiments": {"variants": [3]}})")),
               ConfigError);
}

TEST(Config, SeedPropagates) {
  const auto c = config_from_json(json::parse(R"({"seed": 17})"));
  EXPECT_EQ(c.seed, 17u);
  PipelineConfig d;
  d.set_seed(17);
  EXPECT_EQ(config_to_json(c), config_to_json(d));
}

TEST(Stages, ChainAndRerunTransform) {
  const auto dir = scratch("chain");
  const auto c = config_from_json(small_config(dir / "run"));
  run_generate(c);
  run_preprocess(c);
  run_build_graphs(c);
  run_transform(c, {});
  const auto numeric = c.numeric_dir() / numeric_file_name({graphx::Version::V3,
                                                           graphx::Direction::Undirected});
  ASSERT_TRUE(fs::exists(numeric));
  const auto first = file_digest(numeric);
  run_transform(c, {});
  EXPECT_EQ(file_digest(numeric), first);

  run_evaluate(c, {});
  std::ifstream in(c.results_dir() / "results.csv");
  const auto rows = harness::read_results_csv(in);
  // One GNN configuration plus two baselines, each over 2 splits x 2 folds.
  EXPECT_EQ(rows.size(), 12u);
  const auto report = run_report(c);
  EXPECT_NE(report.find("PKGSage-v1"), std::string::npos);
  EXPECT_NE(report.find("naive_bayes"), std::string::npos);
  EXPECT_TRUE(fs::exists(c.results_dir() / "report.txt"));
  fs::remove_all(dir);
}

TEST(Stages, MissingInputNamesStage) {
  const auto dir = scratch("missing");
  const auto c = config_from_json(small_config(dir / "run"));
  try {
    run_preprocess(c);
    FAIL() << "expected an error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("generate"), std::string::npos);
  }
  fs::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  const auto dir = scratch("cli");
  EXPECT_EQ(cli("--help"), 0);
  EXPECT_EQ(cli("transform --version v9"), 2);
  EXPECT_EQ(cli(""), 2);
  std::ofstream(dir / "bad.json") << R"({"unknown_key": true})";
  EXPECT_EQ(cli("generate --config " + (dir / "bad.json").string()), 3);
  std::ofstream(dir / "ok.json") << small_config(dir / "run").dump();
  EXPECT_EQ(cli("preprocess --config " + (dir / "ok.json").string()), 3);
  EXPECT_EQ(cli("generate --config " + (dir / "ok.json").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "run" / "cohort.jsonl"));
  fs::remove_all(dir);
}

}  // namespace
}  // namespace pkgraph::pipeline

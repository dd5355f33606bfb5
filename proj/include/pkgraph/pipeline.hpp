#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pkgraph/cohort.hpp"
#include "pkgraph/graphx.hpp"
#include "pkgraph/harness.hpp"
#include "pkgraph/preprocess.hpp"
#include "pkgraph/train.hpp"

namespace pkgraph::pipeline {

struct AblationSetup {
  gnn::Arch arch = gnn::Arch::Sage;
  int variant = 1;
  graphx::GraphVersion version{graphx::Version::V3, graphx::Direction::Undirected};
};

// Shared configuration of all stages; see docs/config.md for the JSON layout.
struct PipelineConfig {
  std::filesystem::path workdir = "pkgraph-run";
  std::uint64_t seed = 0;
  cohort::CohortConfig cohort;
  preprocess::PreprocessConfig preprocess;
  gnn::TrainConfig train;
  harness::Protocol protocol;

  std::vector<graphx::Version> versions = {graphx::Version::V1, graphx::Version::V2,
                                           graphx::Version::V3, graphx::Version::V4};
  std::vector<graphx::Direction> directions = {graphx::Direction::Directed,
                                               graphx::Direction::Undirected};
  std::vector<gnn::Arch> archs = {gnn::Arch::Sage};
  std::vector<int> variants = {1};
  std::vector<std::string> baselines = baselines::kBaselineNames;
  AblationSetup ablation;
  bool record_runtime = false;

  // Throws ConfigError.
  void validate() const;
  // Seeds the cohort, the protocol and training from `seed`.
  void set_seed(std::uint64_t s);

  std::filesystem::path cohort_file() const { return workdir / "cohort.jsonl"; }
  std::filesystem::path processed_file() const { return workdir / "processed.jsonl"; }
  std::filesystem::path graph_dir() const { return workdir / "graphs"; }
  std::filesystem::path numeric_dir() const { return workdir / "numeric"; }
  std::filesystem::path model_dir() const { return workdir / "models"; }
  std::filesystem::path results_dir() const { return workdir / "results"; }
  std::filesystem::path manifest_dir() const { return workdir / "manifests"; }
};

// Unknown keys and out-of-range values raise ConfigError.
PipelineConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const PipelineConfig& c);
PipelineConfig load_config(const std::filesystem::path& path);

// Flag overrides narrowing the experiment matrix for one invocation.
struct StageOptions {
  std::optional<graphx::Version> version;
  std::optional<graphx::Direction> direction;
  std::optional<gnn::Arch> arch;
  std::optional<int> variant;
};

std::string numeric_file_name(graphx::GraphVersion v);  // e.g. "v3-undirected.pkgg"

void run_generate(const PipelineConfig& c);
void run_preprocess(const PipelineConfig& c);
void run_build_graphs(const PipelineConfig& c);
void run_transform(const PipelineConfig& c, const StageOptions& o);
void run_train(const PipelineConfig& c, const StageOptions& o);
void run_evaluate(const PipelineConfig& c, const StageOptions& o);
void run_ablate(const PipelineConfig& c, const StageOptions& o);
// Writes results/report.txt and returns its text.
std::string run_report(const PipelineConfig& c);

// Hex FNV-1a digest of a file's bytes.
std::string file_digest(const std::filesystem::path& path);

}  // namespace pkgraph::pipeline

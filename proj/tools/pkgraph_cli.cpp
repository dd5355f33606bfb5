// pkgraph: command-line driver for the readmission pipeline stages.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "pkgraph/error.hpp"
#include "pkgraph/pipeline.hpp"

namespace {

constexpr int kUsage = 2;
constexpr int kValidation = 3;
constexpr int kNumeric = 4;

}  // namespace

int main(int argc, char** argv) {
  using namespace pkgraph;

  CLI::App app{"Person-centric knowledge graph readmission pipeline"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string version, direction, arch;
  std::optional<int> variant;
  bool record_runtime = false;

  app.add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Base seed for every stage");
  app.add_option("--out", out_dir, "Working directory (overrides the config)");
  app.add_option("--version", version, "Graph version")
      ->check(CLI::IsMember({"v1", "v2", "v3", "v4"}));
  app.add_option("--direction", direction, "Edge direction")
      ->check(CLI::IsMember({"directed", "undirected"}));
  app.add_option("--arch", arch, "Model architecture")->check(CLI::IsMember({"sage", "gat"}));
  app.add_option("--variant", variant, "1: linear output layer, 2: convolutional output layer")
      ->check(CLI::IsMember({1, 2}));
  app.add_flag("--record-runtime", record_runtime,
               "Write wall-clock seconds into results CSVs instead of NA");

  const std::pair<const char*, const char*> stages[] = {
      {"generate", "Generate a synthetic admission cohort"},
      {"preprocess", "Group codes, label readmissions and filter the cohort"},
      {"build-graphs", "Write one N-Triples graph per admission"},
      {"transform", "Convert graphs into numeric graph versions"},
      {"train", "Train one model on the full numeric corpus"},
      {"evaluate", "Run the split/fold protocol for models and baselines"},
      {"ablate", "Run the facet ablation suite"},
      {"report", "Summarise results as mean ± std tables"},
  };
  for (const auto& [name, help] : stages) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    pipeline::PipelineConfig config =
        config_path.empty() ? pipeline::PipelineConfig{} : pipeline::load_config(config_path);
    if (seed) config.set_seed(*seed);
    if (!out_dir.empty()) config.workdir = out_dir;
    if (record_runtime) config.record_runtime = true;
    config.validate();

    pipeline::StageOptions options;
    if (!version.empty()) options.version = graphx::version_from_name(version);
    if (!direction.empty()) options.direction = graphx::direction_from_name(direction);
    if (!arch.empty()) options.arch = gnn::arch_from_name(arch);
    options.variant = variant;

    const std::string stage = app.get_subcommands().front()->get_name();
    if (stage == "generate") pipeline::run_generate(config);
    else if (stage == "preprocess") pipeline::run_preprocess(config);
    else if (stage == "build-graphs") pipeline::run_build_graphs(config);
    else if (stage == "transform") pipeline::run_transform(config, options);
    else if (stage == "train") pipeline::run_train(config, options);
    else if (stage == "evaluate") pipeline::run_evaluate(config, options);
    else if (stage == "ablate") pipeline::run_ablate(config, options);
    else if (stage == "report") std::cout << pipeline::run_report(config);
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return 0;
}

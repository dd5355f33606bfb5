#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "pkgraph/baselines.hpp"
#include "pkgraph/graphx.hpp"
#include "pkgraph/metrics.hpp"
#include "pkgraph/train.hpp"

namespace pkgraph::harness {

struct BalancedSplit {
  int split_id = 0;
  std::vector<std::size_t> majority;  // this split's share of the majority class
  std::vector<std::size_t> members;   // majority share + every minority index, sorted
};

// Shuffles the majority class with the seed, cuts it into n_splits folds whose
// sizes differ by at most one and adds the whole minority class to each.
// Throws ValidationError if a class is empty or n_splits exceeds the majority.
std::vector<BalancedSplit> balanced_splits(const std::vector<int>& labels, int n_splits,
                                           std::uint64_t seed);

struct Fold {
  int fold_id = 0;
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Stratified k-fold over `members` (indices into labels). Assignment depends only
// on (members, labels, seed, split_id). Throws ValidationError when a test fold
// would hold a single class.
std::vector<Fold> stratified_folds(const std::vector<std::size_t>& members,
                                   const std::vector<int>& labels, int k, std::uint64_t seed,
                                   int split_id);

struct ExperimentResult {
  std::string config;  // architecture or baseline, e.g. "PKGSage-v1", "knn"
  std::string version;
  std::string direction;
  int split = 0;
  int fold = 0;
  std::uint64_t seed = 0;
  double accuracy = 0.0;
  double f1 = 0.0;
  double runtime_s = 0.0;
};

// Maps (train indices, test indices, run seed) to 0/1 predictions for the test indices.
using Trainer = std::function<std::vector<int>(const std::vector<std::size_t>&,
                                               const std::vector<std::size_t>&, std::uint64_t)>;

// Seed of one (split, fold) run.
std::uint64_t run_seed(std::uint64_t seed, int split, int fold);

// One result per fold, `base` supplying the configuration columns.
std::vector<ExperimentResult> cross_validate(const BalancedSplit& split,
                                             const std::vector<int>& labels, int k,
                                             const Trainer& trainer, std::uint64_t seed,
                                             const ExperimentResult& base);

struct Protocol {
  int n_splits = 10;
  int k_folds = 5;
  std::uint64_t seed = 0;
};

std::vector<ExperimentResult> run_protocol(const std::vector<int>& labels,
                                           const Protocol& protocol, const Trainer& trainer,
                                           const ExperimentResult& base);

// Trainers over a fixed corpus; indices refer to positions in the corpus.
Trainer gnn_trainer(const std::vector<graphx::NumericGraph>& graphs,
                    const gnn::TrainConfig& config, gnn::Arch arch, int variant);
Trainer baseline_trainer(const baselines::TabularDataset& data, const std::string& name);

std::vector<int> labels_of(const std::vector<graphx::NumericGraph>& graphs);

// The five single-facet and ten two-facet exclusions.
std::vector<std::set<std::string>> ablation_sets();
std::string ablation_name(const std::set<std::string>& facets);  // "none" for the empty set

struct Summary {
  std::size_t runs = 0;
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;  // sample standard deviation
  double f1_mean = 0.0;
  double f1_std = 0.0;
};

Summary summarize(const std::vector<ExperimentResult>& results);

struct AblationRow {
  std::string excluded;
  Summary summary;
  double accuracy_delta = 0.0;  // row minus unablated
  double f1_delta = 0.0;
};

struct AblationTable {
  AblationRow baseline;
  std::vector<AblationRow> rows;
  std::vector<ExperimentResult> results;  // config column is "<tag>/<excluded>"
};

AblationTable ablation_suite(const std::vector<graphx::NumericGraph>& graphs,
                             const std::vector<std::set<std::string>>& facet_sets,
                             const Protocol& protocol, const gnn::TrainConfig& config,
                             gnn::Arch arch, int variant);

struct Aggregate {
  std::string config;
  std::string version;
  std::string direction;
  Summary summary;
};

// Grouped by (config, version, direction), sorted by that key.
std::vector<Aggregate> aggregate(const std::vector<ExperimentResult>& results);

// CSV: config,version,direction,split,fold,seed,accuracy,f1,runtime_s. Rows are
// sorted; runtime_s is "NA" unless record_runtime is set so that reruns compare
// byte-for-byte.
void write_results_csv(std::ostream& out, std::vector<ExperimentResult> results,
                       bool record_runtime = false);
std::vector<ExperimentResult> read_results_csv(std::istream& in);

// Aligned "mean ± std" table over all (split, fold) runs of each configuration.
std::string format_table(const std::vector<Aggregate>& rows);
std::string format_ablation(const AblationTable& table);

}  // namespace pkgraph::harness

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "pkgraph/error.hpp"
#include "pkgraph/harness.hpp"
#include "pkgraph/seed.hpp"

namespace pkgraph::harness {

Metrics metrics(const std::vector<int>& predictions, const std::vector<int>& labels) {
  if (predictions.empty()) throw ContractError("metrics of an empty prediction set");
  if (predictions.size() != labels.size())
    throw ContractError("predictions and labels differ in length");
  std::size_t tp = 0, fp = 0, fn = 0, correct = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool p = predictions[i] == 1, y = labels[i] == 1;
    correct += p == y;
    tp += p && y;
    fp += p && !y;
    fn += !p && y;
  }
  Metrics m;
  m.accuracy = 100.0 * static_cast<double>(correct) / static_cast<double>(labels.size());
  const double precision = tp + fp ? static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  const double recall = tp + fn ? static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  m.f1 = precision + recall > 0.0 ? 200.0 * precision * recall / (precision + recall) : 0.0;
  return m;
}

std::vector<BalancedSplit> balanced_splits(const std::vector<int>& labels, int n_splits,
                                           std::uint64_t seed) {
  std::vector<std::size_t> cls[2];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw ValidationError("labels must be 0 or 1");
    cls[labels[i]].push_back(i);
  }
  if (cls[0].empty() || cls[1].empty()) throw ValidationError("both classes must be present");
  const int majority_label = cls[1].size() > cls[0].size() ? 1 : 0;
  auto majority = cls[majority_label];
  const auto& minority = cls[1 - majority_label];
  if (n_splits < 1 || static_cast<std::size_t>(n_splits) > majority.size())
    throw ValidationError("n_splits must lie in [1, majority count]");

  std::mt19937_64 rng(derive_seed(seed, "balanced_splits"));
  std::shuffle(majority.begin(), majority.end(), rng);
  const std::size_t n = majority.size(), k = static_cast<std::size_t>(n_splits);
  std::vector<BalancedSplit> splits;
  std::size_t start = 0;
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t len = n / k + (s < n % k ? 1 : 0);
    BalancedSplit split;
    split.split_id = static_cast<int>(s);
    split.majority.assign(majority.begin() + static_cast<std::ptrdiff_t>(start),
                          majority.begin() + static_cast<std::ptrdiff_t>(start + len));
    std::sort(split.majority.begin(), split.majority.end());
    split.members = split.majority;
    split.members.insert(split.members.end(), minority.begin(), minority.end());
    std::sort(split.members.begin(), split.members.end());
    splits.push_back(std::move(split));
    start += len;
  }
  return splits;
}

std::vector<Fold> stratified_folds(const std::vector<std::size_t>& members,
                                   const std::vector<int>& labels, int k, std::uint64_t seed,
                                   int split_id) {
  if (k < 2) throw ConfigError("cross-validation needs at least two folds");
  std::vector<std::size_t> cls[2];
  for (auto i : members) {
    if (i >= labels.size() || (labels[i] != 0 && labels[i] != 1))
      throw ValidationError("fold member without a 0/1 label");
    cls[labels[i]].push_back(i);
  }
  for (const auto& c : cls)
    if (c.size() < static_cast<std::size_t>(k))
      throw ValidationError("a class has fewer members than folds; some test fold would be single-class");

  std::mt19937_64 rng(derive_seed(seed, "folds", static_cast<std::uint64_t>(split_id)));
  std::vector<int> assignment(labels.size(), -1);
  for (auto& c : cls) {
    std::shuffle(c.begin(), c.end(), rng);
    for (std::size_t j = 0; j < c.size(); ++j) assignment[c[j]] = static_cast<int>(j % k);
  }
  std::vector<Fold> folds(static_cast<std::size_t>(k));
  for (int f = 0; f < k; ++f) folds[f].fold_id = f;
  for (auto i : members) {
    for (int f = 0; f < k; ++f) (assignment[i] == f ? folds[f].test : folds[f].train).push_back(i);
  }
  return folds;
}

std::uint64_t run_seed(std::uint64_t seed, int split, int fold) {
  return derive_seed(seed, "run", static_cast<std::uint64_t>(split) * 1000u +
                                      static_cast<std::uint64_t>(fold));
}

std::vector<ExperimentResult> cross_validate(const BalancedSplit& split,
                                             const std::vector<int>& labels, int k,
                                             const Trainer& trainer, std::uint64_t seed,
                                             const ExperimentResult& base) {
  std::vector<ExperimentResult> out;
  for (const auto& fold : stratified_folds(split.members, labels, k, seed, split.split_id)) {
    const auto started = std::chrono::steady_clock::now();
    const auto rs = run_seed(seed, split.split_id, fold.fold_id);
    const auto predictions = trainer(fold.train, fold.test, rs);
    std::vector<int> truth;
    for (auto i : fold.test) truth.push_back(labels[i]);
    const auto m = metrics(predictions, truth);
    ExperimentResult r = base;
    r.split = split.split_id;
    r.fold = fold.fold_id;
    r.seed = rs;
    r.accuracy = m.accuracy;
    r.f1 = m.f1;
    r.runtime_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    out.push_back(r);
  }
  return out;
}

std::vector<ExperimentResult> run_protocol(const std::vector<int>& labels,
                                           const Protocol& protocol, const Trainer& trainer,
                                           const ExperimentResult& base) {
  std::vector<ExperimentResult> out;
  for (const auto& split : balanced_splits(labels, protocol.n_splits, protocol.seed)) {
    auto rows = cross_validate(split, labels, protocol.k_folds, trainer, protocol.seed, base);
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

std::vector<int> labels_of(const std::vector<graphx::NumericGraph>& graphs) {
  std::vector<int> labels;
  for (const auto& g : graphs) labels.push_back(g.label);
  return labels;
}

Trainer gnn_trainer(const std::vector<graphx::NumericGraph>& graphs,
                    const gnn::TrainConfig& config, gnn::Arch arch, int variant) {
  return [&graphs, config, arch, variant](const std::vector<std::size_t>& train,
                                          const std::vector<std::size_t>& test,
                                          std::uint64_t seed) {
    std::vector<const graphx::NumericGraph*> train_graphs, test_graphs;
    for (auto i : train) train_graphs.push_back(&graphs[i]);
    for (auto i : test) test_graphs.push_back(&graphs[i]);
    gnn::TrainConfig c = config;
    c.seed = seed;
    const auto result = gnn::train(train_graphs, c, arch, variant);
    std::vector<int> predictions;
    for (double p : gnn::predict_proba(result.params, test_graphs))
      predictions.push_back(p >= 0.5 ? 1 : 0);
    return predictions;
  };
}

Trainer baseline_trainer(const baselines::TabularDataset& data, const std::string& name) {
  baselines::make_classifier(name, 0);  // reject unknown names up front
  return [&data, name](const std::vector<std::size_t>& train,
                       const std::vector<std::size_t>& test, std::uint64_t seed) {
    auto model = baselines::make_classifier(name, seed);
    model->fit(data.subset(train));
    std::vector<int> predictions;
    for (auto i : test) predictions.push_back(model->predict(data.row(i)));
    return predictions;
  };
}

std::vector<std::set<std::string>> ablation_sets() {
  const std::vector<std::string> facets(graphx::kAblationFacets.begin(),
                                        graphx::kAblationFacets.end());
  std::vector<std::set<std::string>> out;
  for (const auto& f : facets) out.push_back({f});
  for (std::size_t i = 0; i < facets.size(); ++i)
    for (std::size_t j = i + 1; j < facets.size(); ++j) out.push_back({facets[i], facets[j]});
  return out;
}

std::string ablation_name(const std::set<std::string>& facets) {
  if (facets.empty()) return "none";
  std::string out;
  for (const auto& f : facets) out += (out.empty() ? "" : "+") + f;
  return out;
}

Summary summarize(const std::vector<ExperimentResult>& results) {
  Summary s;
  s.runs = results.size();
  if (results.empty()) return s;
  for (const auto& r : results) {
    s.accuracy_mean += r.accuracy;
    s.f1_mean += r.f1;
  }
  const double n = static_cast<double>(results.size());
  s.accuracy_mean /= n;
  s.f1_mean /= n;
  if (results.size() > 1) {
    for (const auto& r : results) {
      s.accuracy_std += (r.accuracy - s.accuracy_mean) * (r.accuracy - s.accuracy_mean);
      s.f1_std += (r.f1 - s.f1_mean) * (r.f1 - s.f1_mean);
    }
    s.accuracy_std = std::sqrt(s.accuracy_std / (n - 1.0));
    s.f1_std = std::sqrt(s.f1_std / (n - 1.0));
  }
  return s;
}

AblationTable ablation_suite(const std::vector<graphx::NumericGraph>& graphs,
                             const std::vector<std::set<std::string>>& facet_sets,
                             const Protocol& protocol, const gnn::TrainConfig& config,
                             gnn::Arch arch, int variant) {
  for (const auto& set : facet_sets)
    for (const auto& f : set)
      if (!graphx::kAblationFacets.contains(f))
        throw ValidationError("unknown ablation facet '" + f + "'");
  if (graphs.empty()) throw ValidationError("ablation needs a non-empty corpus");

  const auto labels = labels_of(graphs);
  const std::string tag = std::string(arch == gnn::Arch::Sage ? "PKGSage" : "PKGA") + "-v" +
                          std::to_string(variant);
  ExperimentResult base;
  base.version = graphx::name(graphs.front().version.version);
  base.direction = graphx::name(graphs.front().version.direction);

  AblationTable table;
  auto run = [&](const std::set<std::string>& facets) {
    std::vector<graphx::NumericGraph> ablated;
    ablated.reserve(graphs.size());
    for (const auto& g : graphs) ablated.push_back(graphx::ablate(g, facets));
    ExperimentResult b = base;
    b.config = tag + "/" + ablation_name(facets);
    auto results = run_protocol(labels, protocol, gnn_trainer(ablated, config, arch, variant), b);
    table.results.insert(table.results.end(), results.begin(), results.end());
    return AblationRow{ablation_name(facets), summarize(results), 0.0, 0.0};
  };

  table.baseline = run({});
  for (const auto& set : facet_sets) {
    auto row = run(set);
    row.accuracy_delta = row.summary.accuracy_mean - table.baseline.summary.accuracy_mean;
    row.f1_delta = row.summary.f1_mean - table.baseline.summary.f1_mean;
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace pkgraph::harness

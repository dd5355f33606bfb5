#include <algorithm>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>

#include "pkgraph/error.hpp"
#include "pkgraph/metrics.hpp"
#include "pkgraph/seed.hpp"
#include "pkgraph/train.hpp"

namespace pkgraph::gnn {
namespace {

using Rng = std::mt19937_64;

// Stratified carve: each class contributes round(fraction * count) members,
// at least one and never all of them.
void carve_validation(const std::vector<const graphx::NumericGraph*>& graphs, double fraction,
                      std::uint64_t seed, std::vector<std::size_t>& train_idx,
                      std::vector<std::size_t>& val_idx) {
  Rng rng(derive_seed(seed, "validation"));
  for (int cls : {0, 1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < graphs.size(); ++i)
      if (graphs[i]->label == cls) members.push_back(i);
    std::shuffle(members.begin(), members.end(), rng);
    auto n_val = static_cast<std::size_t>(std::lround(fraction * members.size()));
    n_val = std::clamp<std::size_t>(n_val, 1, members.size() - 1);
    val_idx.insert(val_idx.end(), members.begin(), members.begin() + n_val);
    train_idx.insert(train_idx.end(), members.begin() + n_val, members.end());
  }
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(val_idx.begin(), val_idx.end());
}

}  // namespace

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (epochs < 0) throw ConfigError("epochs must be nonnegative");
  if (batch_size < 1) throw ConfigError("batch_size must be positive");
  if (n_bases < 1) throw ConfigError("n_bases must be positive");
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0))
    throw ConfigError("validation_fraction must lie in (0,1)");
  if (hidden1 == 0 || hidden2 == 0) throw ConfigError("hidden sizes must be positive");
}

std::vector<double> predict_proba(const ModelParams& params,
                                  const std::vector<const graphx::NumericGraph*>& graphs) {
  std::vector<double> out;
  out.reserve(graphs.size());
  for (const auto* g : graphs) out.push_back(model_forward(params, prepare(*g)));
  return out;
}

TrainResult train(const std::vector<const graphx::NumericGraph*>& graphs,
                  const TrainConfig& config, Arch arch, int variant) {
  config.validate();
  std::size_t counts[2] = {0, 0};
  for (const auto* g : graphs) {
    if (g->label != 0 && g->label != 1) throw ValidationError("graph " + g->id + " is unlabeled");
    ++counts[g->label];
  }
  if (counts[0] < 2 || counts[1] < 2)
    throw ValidationError("training needs at least two graphs of each class");

  ModelSpec spec;
  spec.arch = arch;
  spec.variant = variant;
  spec.in_dim = graphs.front()->vocab_size();
  spec.n_relations = graphs.front()->relations.size();
  spec.n_bases = static_cast<std::size_t>(config.n_bases);
  spec.hidden1 = config.hidden1;
  spec.hidden2 = config.hidden2;
  for (const auto* g : graphs)
    if (g->vocab_size() != spec.in_dim || g->relations != graphs.front()->relations)
      throw ValidationError("graphs in one training set must share vocabulary and version");

  TrainResult result;
  result.params = init_params(spec, derive_seed(config.seed, "init"));
  carve_validation(graphs, config.validation_fraction, config.seed, result.train_indices,
                   result.validation_indices);

  std::vector<PreparedGraph> prepared;
  prepared.reserve(graphs.size());
  for (const auto* g : graphs) prepared.push_back(prepare(*g));

  std::vector<int> val_labels;
  for (auto i : result.validation_indices) val_labels.push_back(graphs[i]->label);

  ModelParams params = result.params;
  ModelParams grads = zeros_like(params);
  AdamState state = AdamState::for_params(params);
  const AdamConfig adam{config.learning_rate};
  harness::Metrics best{-1.0, -1.0};

  std::vector<std::size_t> order = result.train_indices;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    Rng rng(derive_seed(config.seed, "epoch", static_cast<std::uint64_t>(epoch)));
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t end =
          std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      const double scale = 1.0 / static_cast<double>(end - start);
      for (auto& [_, t] : grads.tensors()) t->set_zero();
      for (std::size_t k = start; k < end; ++k) {
        const auto i = order[k];
        loss_sum += accumulate_gradients(params, prepared[i], graphs[i]->label, grads, scale);
      }
      adam_step(params, grads, state, adam);
    }

    std::vector<int> predictions;
    for (auto i : result.validation_indices)
      predictions.push_back(model_forward(params, prepared[i]) >= 0.5 ? 1 : 0);
    const auto m = harness::metrics(predictions, val_labels);
    result.history.push_back(
        {epoch, loss_sum / static_cast<double>(order.size()), m.accuracy, m.f1});
    if (m.f1 > best.f1 || (m.f1 == best.f1 && m.accuracy > best.accuracy)) {
      best = m;
      result.params = params;
      result.best_epoch = epoch;
    }
  }
  return result;
}

TrainResult train(const std::vector<graphx::NumericGraph>& graphs, const TrainConfig& config,
                  Arch arch, int variant) {
  std::vector<const graphx::NumericGraph*> ptrs;
  for (const auto& g : graphs) ptrs.push_back(&g);
  return train(ptrs, config, arch, variant);
}

void write_history(std::ostream& out, const std::vector<EpochStats>& history) {
  out << "epoch,train_loss,val_acc,val_f1\n";
  char buf[128];
  for (const auto& h : history) {
    std::snprintf(buf, sizeof buf, "%d,%.10g,%.4f,%.4f\n", h.epoch, h.train_loss,
                  h.val_accuracy, h.val_f1);
    out << buf;
  }
}

}  // namespace pkgraph::gnn

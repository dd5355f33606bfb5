#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "pkgraph/gnn.hpp"

namespace pkgraph::gnn {

struct AdamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  ModelParams m;
  ModelParams v;
  std::uint64_t step = 0;

  static AdamState for_params(const ModelParams& p);
};

void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state,
               const AdamConfig& config);

struct TrainConfig {
  double learning_rate = 0.001;
  int epochs = 100;
  int batch_size = 32;
  int n_bases = 3;
  double validation_fraction = 0.15;
  std::size_t hidden1 = 64;
  std::size_t hidden2 = 32;
  std::uint64_t seed = 0;

  void validate() const;
};

struct EpochStats {
  int epoch = 0;
  double train_loss = 0.0;
  double val_accuracy = 0.0;  // percent
  double val_f1 = 0.0;        // percent
};

struct TrainResult {
  ModelParams params;  // snapshot with the best validation F1 (accuracy breaks ties)
  std::vector<EpochStats> history;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> validation_indices;
  int best_epoch = 0;  // 0: the initialisation was kept
};

// Carves a stratified validation set off `graphs`, trains with mini-batch Adam
// and keeps the best validation snapshot. Labels are read from the graphs.
// Needs at least two graphs of each class.
TrainResult train(const std::vector<const graphx::NumericGraph*>& graphs,
                  const TrainConfig& config, Arch arch, int variant);
TrainResult train(const std::vector<graphx::NumericGraph>& graphs, const TrainConfig& config,
                  Arch arch, int variant);

std::vector<double> predict_proba(const ModelParams& params,
                                  const std::vector<const graphx::NumericGraph*>& graphs);

// CSV with header epoch,train_loss,val_acc,val_f1.
void write_history(std::ostream& out, const std::vector<EpochStats>& history);

// Binary parameter container, see docs/formats.md.
void save_checkpoint(const std::filesystem::path& path, const ModelParams& params);
ModelParams load_checkpoint(const std::filesystem::path& path);

}  // namespace pkgraph::gnn

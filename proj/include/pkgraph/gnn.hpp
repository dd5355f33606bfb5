#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pkgraph/graphx.hpp"
#include "pkgraph/matrix.hpp"

namespace pkgraph::gnn {

enum class Arch : std::uint8_t { Sage, Gat };

std::string_view name(Arch a);
std::optional<Arch> arch_from_name(std::string_view name);

// Layer input: either the sparse count features of a graph or a dense matrix.
class LayerInput {
 public:
  LayerInput(const Matrix& dense) : dense_(&dense) {}
  LayerInput(const graphx::SparseCounts& sparse) : sparse_(&sparse) {}

  std::size_t rows() const;
  std::size_t cols() const;
  // c += X * b
  void mul_acc(const Matrix& b, Matrix& c) const;
  // c += X^T * d
  void tmul_acc(const Matrix& d, Matrix& c) const;
  // c[row] += X[row] * b
  void row_mul_acc(std::size_t row, const Matrix& b, double* c) const;

  // Calls f(column, value) for the nonzero entries of one row.
  template <typename F>
  void for_each_nonzero(std::size_t row, F&& f) const {
    if (dense_) {
      const double* x = dense_->row(row);
      for (std::size_t c = 0; c < dense_->cols; ++c)
        if (x[c] != 0.0) f(c, x[c]);
      return;
    }
    for (auto p = sparse_->row_ptr[row]; p < sparse_->row_ptr[row + 1]; ++p)
      f(static_cast<std::size_t>(sparse_->cols[p]), static_cast<double>(sparse_->values[p]));
  }

 private:
  const Matrix* dense_ = nullptr;
  const graphx::SparseCounts* sparse_ = nullptr;
};

// In-neighbour lists per relation (multiset: duplicate edges repeat).
struct Adjacency {
  struct Relation {
    std::vector<std::uint32_t> ptr;  // n_nodes + 1
    std::vector<std::uint32_t> src;
    bool empty() const { return src.empty(); }
  };
  std::size_t n_nodes = 0;
  std::vector<Relation> relations;

  static Adjacency from_edges(std::size_t n_nodes, const std::vector<graphx::EdgeList>& edges);
};

// One relational convolution. Relation weights are W_r = sum_b coeffs(r,b) * bases[b].
// Sage:  X'[v] = X[v] self + sum_r mean_{u in N_r(v)} X[u] W_r
// GAT:   X'[v] = sum_r sum_{u in N_r(v) + v} alpha^r_uv X[u] W_r
//        alpha^r_.v = softmax(leaky_relu(att_src[r] . X[u]W_r + att_dst[r] . X[v]W_r))
struct ConvWeights {
  std::vector<Matrix> bases;  // d_in x d_out each
  Matrix coeffs;              // n_relations x n_bases
  Matrix self;                // Sage only
  Matrix att_src;             // GAT only, n_relations x d_out
  Matrix att_dst;

  std::size_t d_in() const { return bases.front().rows; }
  std::size_t d_out() const { return bases.front().cols; }
  std::size_t n_relations() const { return coeffs.rows; }
  Matrix effective_weight(std::size_t r) const;
};

inline constexpr double kLeakySlope = 0.2;

struct SparseVector {
  std::vector<std::uint32_t> index;
  std::vector<double> value;
};

// Intermediate values kept by a forward pass for the backward pass.
struct ConvCache {
  // Sage: output rows computed, and per target the mean of its in-neighbour
  // inputs under each relation and the basis mixtures sum_r coeffs(r,b) * mean_r.
  std::vector<std::uint32_t> targets;
  std::vector<std::vector<SparseVector>> aggregated;  // [target][relation]
  std::vector<std::vector<SparseVector>> mixed;       // [target][basis]
  // GAT
  std::vector<Matrix> projected;  // X * bases[b]
  std::vector<Matrix> relation;   // X * W_r (GAT)
  // GAT: per relation, per target v, attention weights over [in-neighbours..., v]
  // and the pre-activation logits.
  std::vector<std::vector<double>> alpha;
  std::vector<std::vector<double>> logits;
};

// Sage aggregates before transforming and only fills the rows listed in
// `targets` (all rows when null); the other output rows stay zero.
Matrix sage_layer(const LayerInput& x, const Adjacency& adj, const ConvWeights& w,
                  ConvCache* cache = nullptr, const std::vector<std::uint32_t>* targets = nullptr);
Matrix gat_layer(const LayerInput& x, const Adjacency& adj, const ConvWeights& w,
                 ConvCache* cache = nullptr);

// Accumulates parameter gradients into `grad` and, when dx is given, input
// gradients into *dx.
void sage_backward(const LayerInput& x, const Adjacency& adj, const ConvWeights& w,
                   const ConvCache& cache, const Matrix& d_out, ConvWeights& grad, Matrix* dx);
void gat_backward(const LayerInput& x, const Adjacency& adj, const ConvWeights& w,
                  const ConvCache& cache, const Matrix& d_out, ConvWeights& grad, Matrix* dx);

struct ModelSpec {
  Arch arch = Arch::Sage;
  int variant = 1;  // 1: linear output layer, 2: convolutional output layer
  std::size_t in_dim = 0;
  std::size_t n_relations = 0;
  std::size_t n_bases = 3;
  std::size_t hidden1 = 64;
  std::size_t hidden2 = 32;

  void validate() const;
  bool operator==(const ModelSpec&) const = default;
};

struct ModelParams {
  ModelSpec spec;
  ConvWeights layer1;
  ConvWeights layer2;
  ConvWeights layer3;  // variant 2
  Matrix out_weight;   // variant 1, hidden2 x 1
  Matrix out_bias;     // variant 1, 1 x 1

  // Architecture tag, e.g. "PKGSage-v1" or "PKGA-v2".
  std::string tag() const;
  // Every parameter tensor with a stable name, in a fixed order.
  std::vector<std::pair<std::string, Matrix*>> tensors();
  std::vector<std::pair<std::string, const Matrix*>> tensors() const;
  std::size_t parameter_count() const;
};

// Glorot-uniform initialisation from the seed.
ModelParams init_params(const ModelSpec& spec, std::uint64_t seed);
ModelParams zeros_like(const ModelParams& p);

// Graph with its adjacency precomputed.
struct PreparedGraph {
  const graphx::NumericGraph* graph = nullptr;
  Adjacency adj;
};
PreparedGraph prepare(const graphx::NumericGraph& g);

// Probability of readmission read at the patient node.
double model_forward(const ModelParams& params, const PreparedGraph& g);

// Rows that a layer reads to produce `targets`: the targets and their in-neighbours.
std::vector<std::uint32_t> input_rows(const Adjacency& adj, const std::vector<std::uint32_t>& targets);

// Node representations after the first convolution (before activation), all rows.
Matrix first_layer_output(const ModelParams& params, const PreparedGraph& g);

double bce_loss(double p, int label);

// Adds scale * dLoss/dParams into grads and returns the loss.
double accumulate_gradients(const ModelParams& params, const PreparedGraph& g, int label,
                            ModelParams& grads, double scale = 1.0);

}  // namespace pkgraph::gnn

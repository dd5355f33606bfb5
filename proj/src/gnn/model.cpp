#include <algorithm>
#include <cmath>
#include <random>

#include "pkgraph/error.hpp"
#include "pkgraph/gnn.hpp"
#include "pkgraph/seed.hpp"

namespace pkgraph::gnn {
namespace {

ConvWeights make_conv(const ModelSpec& spec, std::size_t d_in, std::size_t d_out) {
  ConvWeights w;
  w.bases.assign(spec.n_bases, Matrix(d_in, d_out));
  w.coeffs = Matrix(spec.n_relations, spec.n_bases);
  if (spec.arch == Arch::Sage) {
    w.self = Matrix(d_in, d_out);
  } else {
    w.att_src = Matrix(spec.n_relations, d_out);
    w.att_dst = Matrix(spec.n_relations, d_out);
  }
  return w;
}

void append_conv(const std::string& prefix, ConvWeights& w,
                 std::vector<std::pair<std::string, Matrix*>>& out) {
  for (std::size_t b = 0; b < w.bases.size(); ++b)
    out.emplace_back(prefix + ".basis" + std::to_string(b), &w.bases[b]);
  out.emplace_back(prefix + ".coeffs", &w.coeffs);
  if (w.self.size()) out.emplace_back(prefix + ".self", &w.self);
  if (w.att_src.size()) {
    out.emplace_back(prefix + ".att_src", &w.att_src);
    out.emplace_back(prefix + ".att_dst", &w.att_dst);
  }
}

// Sage only computes the target rows; GAT always computes every row.
Matrix conv_forward(Arch arch, const LayerInput& x, const Adjacency& adj, const ConvWeights& w,
                    ConvCache* cache, const std::vector<std::uint32_t>* targets) {
  return arch == Arch::Sage ? sage_layer(x, adj, w, cache, targets) : gat_layer(x, adj, w, cache);
}

void conv_backward(Arch arch, const LayerInput& x, const Adjacency& adj, const ConvWeights& w,
                   const ConvCache& cache, const Matrix& d_out, ConvWeights& grad, Matrix* dx) {
  if (arch == Arch::Sage) {
    sage_backward(x, adj, w, cache, d_out, grad, dx);
  } else {
    gat_backward(x, adj, w, cache, d_out, grad, dx);
  }
}

Matrix relu(const Matrix& a) {
  Matrix h = a;
  for (double& v : h.data) v = v > 0.0 ? v : 0.0;
  return h;
}

void relu_backward(const Matrix& pre, Matrix& grad) {
  for (std::size_t i = 0; i < pre.size(); ++i)
    if (!(pre.data[i] > 0.0)) grad.data[i] = 0.0;
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

struct Trace {
  ConvCache c1, c2, c3;
  Matrix a1, h1, a2, h2, a3;
  double z = 0.0;
  double p = 0.0;
};

// Rows each conv layer must produce for the patient logit, first layer first.
std::vector<std::vector<std::uint32_t>> layer_targets(const ModelParams& m, const PreparedGraph& g) {
  std::vector<std::vector<std::uint32_t>> t(m.spec.variant == 2 ? 3 : 2);
  t.back() = {static_cast<std::uint32_t>(g.graph->patient_index)};
  for (std::size_t i = t.size() - 1; i > 0; --i) t[i - 1] = input_rows(g.adj, t[i]);
  return t;
}

void run_forward(const ModelParams& m, const PreparedGraph& g, Trace& t, bool keep,
                 bool all_rows = false) {
  const auto& graph = *g.graph;
  if (graph.vocab_size() != m.spec.in_dim)
    throw ContractError("graph feature width " + std::to_string(graph.vocab_size()) +
                        " does not match model input " + std::to_string(m.spec.in_dim));
  if (graph.relations.size() != m.spec.n_relations)
    throw ContractError("graph relation count does not match model");
  const Arch arch = m.spec.arch;
  const auto targets = layer_targets(m, g);
  const auto* t1 = all_rows ? nullptr : &targets[0];
  t.a1 = conv_forward(arch, LayerInput(graph.features), g.adj, m.layer1, keep ? &t.c1 : nullptr, t1);
  check_finite(t.a1, "layer1");
  t.h1 = relu(t.a1);
  t.a2 = conv_forward(arch, LayerInput(t.h1), g.adj, m.layer2, keep ? &t.c2 : nullptr,
                      &targets[1]);
  check_finite(t.a2, "layer2");
  t.h2 = relu(t.a2);
  const std::size_t p = graph.patient_index;
  if (m.spec.variant == 1) {
    t.z = m.out_bias(0, 0);
    for (std::size_t j = 0; j < t.h2.cols; ++j) t.z += t.h2(p, j) * m.out_weight(j, 0);
  } else {
    t.a3 = conv_forward(arch, LayerInput(t.h2), g.adj, m.layer3, keep ? &t.c3 : nullptr,
                        &targets[2]);
    t.z = t.a3(p, 0);
  }
  if (!std::isfinite(t.z)) throw NumericError("layer3", "non-finite output logit");
  t.p = sigmoid(t.z);
}

}  // namespace

void ModelSpec::validate() const {
  if (variant != 1 && variant != 2) throw ConfigError("variant must be 1 or 2");
  if (in_dim == 0 || n_relations == 0 || n_bases == 0 || hidden1 == 0 || hidden2 == 0)
    throw ConfigError("model dimensions must be positive");
}

std::string ModelParams::tag() const {
  return std::string(spec.arch == Arch::Sage ? "PKGSage" : "PKGA") + "-v" +
         std::to_string(spec.variant);
}

std::vector<std::pair<std::string, Matrix*>> ModelParams::tensors() {
  std::vector<std::pair<std::string, Matrix*>> out;
  append_conv("layer1", layer1, out);
  append_conv("layer2", layer2, out);
  if (spec.variant == 2) {
    append_conv("layer3", layer3, out);
  } else {
    out.emplace_back("output.weight", &out_weight);
    out.emplace_back("output.bias", &out_bias);
  }
  return out;
}

std::vector<std::pair<std::string, const Matrix*>> ModelParams::tensors() const {
  std::vector<std::pair<std::string, const Matrix*>> out;
  for (auto& [n, m] : const_cast<ModelParams*>(this)->tensors()) out.emplace_back(n, m);
  return out;
}

std::size_t ModelParams::parameter_count() const {
  std::size_t n = 0;
  for (const auto& [_, m] : tensors()) n += m->size();
  return n;
}

ModelParams init_params(const ModelSpec& spec, std::uint64_t seed) {
  spec.validate();
  ModelParams m;
  m.spec = spec;
  m.layer1 = make_conv(spec, spec.in_dim, spec.hidden1);
  m.layer2 = make_conv(spec, spec.hidden1, spec.hidden2);
  if (spec.variant == 2) {
    m.layer3 = make_conv(spec, spec.hidden2, 1);
  } else {
    m.out_weight = Matrix(spec.hidden2, 1);
    m.out_bias = Matrix(1, 1);
  }
  for (auto& [name, t] : m.tensors()) {
    if (name == "output.bias") continue;
    // Attention vectors are initialised as 1 x d_out rows.
    const bool attention = name.ends_with(".att_src") || name.ends_with(".att_dst");
    const double fan = attention ? 1.0 + static_cast<double>(t->cols)
                                 : static_cast<double>(t->rows + t->cols);
    const double limit = std::sqrt(6.0 / fan);
    std::mt19937_64 rng(derive_seed(seed, name));
    std::uniform_real_distribution<double> u(-limit, limit);
    for (double& v : t->data) v = u(rng);
  }
  return m;
}

ModelParams zeros_like(const ModelParams& p) {
  ModelParams z = p;
  for (auto& [_, t] : z.tensors()) t->set_zero();
  return z;
}

PreparedGraph prepare(const graphx::NumericGraph& g) {
  return {&g, Adjacency::from_edges(g.n_nodes, g.edges)};
}

double model_forward(const ModelParams& params, const PreparedGraph& g) {
  Trace t;
  run_forward(params, g, t, false);
  return t.p;
}

Matrix first_layer_output(const ModelParams& params, const PreparedGraph& g) {
  Trace t;
  run_forward(params, g, t, false, true);
  return t.a1;
}

double bce_loss(double p, int label) {
  const double q = std::clamp(p, 1e-12, 1.0 - 1e-12);
  return label ? -std::log(q) : -std::log(1.0 - q);
}

double accumulate_gradients(const ModelParams& params, const PreparedGraph& g, int label,
                            ModelParams& grads, double scale) {
  Trace t;
  run_forward(params, g, t, true);
  const Arch arch = params.spec.arch;
  const std::size_t p = g.graph->patient_index;
  const double dz = scale * (t.p - static_cast<double>(label));

  Matrix dh2(t.h2.rows, t.h2.cols);
  if (params.spec.variant == 1) {
    for (std::size_t j = 0; j < t.h2.cols; ++j) {
      grads.out_weight(j, 0) += dz * t.h2(p, j);
      dh2(p, j) = dz * params.out_weight(j, 0);
    }
    grads.out_bias(0, 0) += dz;
  } else {
    Matrix da3(t.a3.rows, 1);
    da3(p, 0) = dz;
    conv_backward(arch, LayerInput(t.h2), g.adj, params.layer3, t.c3, da3, grads.layer3, &dh2);
  }
  relu_backward(t.a2, dh2);
  Matrix dh1(t.h1.rows, t.h1.cols);
  conv_backward(arch, LayerInput(t.h1), g.adj, params.layer2, t.c2, dh2, grads.layer2, &dh1);
  relu_backward(t.a1, dh1);
  conv_backward(arch, LayerInput(g.graph->features), g.adj, params.layer1, t.c1, dh1,
                grads.layer1, nullptr);
  return bce_loss(t.p, label);
}

}  // namespace pkgraph::gnn

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pkgraph/error.hpp"
#include "pkgraph/gnn.hpp"

namespace pkgraph::gnn {
namespace {

void check_layer_shapes(const LayerInput& x, const Adjacency& adj, const ConvWeights& w) {
  if (w.bases.empty()) throw ContractError("layer has no bases");
  if (x.cols() != w.d_in()) throw ContractError("layer input width does not match weights");
  if (x.rows() != adj.n_nodes) throw ContractError("layer input rows do not match node count");
  if (adj.relations.size() != w.n_relations())
    throw ContractError("relation count does not match layer coefficients");
  if (w.coeffs.cols != w.bases.size()) throw ContractError("coefficient width != basis count");
}

std::vector<Matrix> project(const LayerInput& x, const ConvWeights& w) {
  std::vector<Matrix> out;
  out.reserve(w.bases.size());
  for (const auto& v : w.bases) {
    Matrix h(x.rows(), w.d_out());
    x.mul_acc(v, h);
    out.push_back(std::move(h));
  }
  return out;
}

Matrix combine(const std::vector<Matrix>& projected, const Matrix& coeffs, std::size_t r) {
  Matrix z(projected.front().rows, projected.front().cols);
  for (std::size_t b = 0; b < projected.size(); ++b) axpy(coeffs(r, b), projected[b], z);
  return z;
}

// dZ_r contribution to coefficient and projected-feature gradients.
void basis_backward(const std::vector<Matrix>& projected, const Matrix& coeffs, std::size_t r,
                    const Matrix& dz, Matrix& dcoeffs, std::vector<Matrix>& dprojected) {
  for (std::size_t b = 0; b < projected.size(); ++b) {
    dcoeffs(r, b) += dot(dz, projected[b]);
    axpy(coeffs(r, b), dz, dprojected[b]);
  }
}

void projection_backward(const LayerInput& x, const ConvWeights& w,
                         const std::vector<Matrix>& dprojected, ConvWeights& grad, Matrix* dx) {
  for (std::size_t b = 0; b < w.bases.size(); ++b) {
    x.tmul_acc(dprojected[b], grad.bases[b]);
    if (dx) gemm_nt_acc(dprojected[b], w.bases[b], *dx);
  }
}

double row_dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double leaky(double s) { return s > 0.0 ? s : kLeakySlope * s; }

void add_scaled(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

// Merges sparse contributions through a dense scratch row.
class Accumulator {
 public:
  explicit Accumulator(std::size_t width) : dense_(width, 0.0), seen_(width, 0) {}

  void add(std::size_t c, double v) {
    if (!seen_[c]) {
      seen_[c] = 1;
      touched_.push_back(static_cast<std::uint32_t>(c));
    }
    dense_[c] += v;
  }

  SparseVector take() {
    std::sort(touched_.begin(), touched_.end());
    SparseVector out;
    out.index = touched_;
    out.value.reserve(touched_.size());
    for (auto c : touched_) {
      out.value.push_back(dense_[c]);
      dense_[c] = 0.0;
      seen_[c] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<double> dense_;
  std::vector<char> seen_;
  std::vector<std::uint32_t> touched_;
};

}  // namespace

std::string_view name(Arch a) { return a == Arch::Sage ? "sage" : "gat"; }

std::optional<Arch> arch_from_name(std::string_view n) {
  if (n == "sage") return Arch::Sage;
  if (n == "gat") return Arch::Gat;
  return std::nullopt;
}

std::size_t LayerInput::rows() const { return dense_ ? dense_->rows : sparse_->n_rows(); }
std::size_t LayerInput::cols() const { return dense_ ? dense_->cols : sparse_->n_cols; }

void LayerInput::mul_acc(const Matrix& b, Matrix& c) const {
  if (dense_) return gemm_acc(*dense_, b, c);
  if (b.rows != cols() || c.rows != rows() || c.cols != b.cols)
    throw ContractError("sparse gemm shape mismatch");
  for (std::size_t i = 0; i < rows(); ++i) row_mul_acc(i, b, c.row(i));
}

void LayerInput::row_mul_acc(std::size_t i, const Matrix& b, double* c) const {
  if (dense_) {
    const double* xi = dense_->row(i);
    for (std::size_t k = 0; k < dense_->cols; ++k) {
      if (xi[k] == 0.0) continue;
      const double* bk = b.row(k);
      for (std::size_t j = 0; j < b.cols; ++j) c[j] += xi[k] * bk[j];
    }
    return;
  }
  for (auto p = sparse_->row_ptr[i]; p < sparse_->row_ptr[i + 1]; ++p) {
    const double v = sparse_->values[p];
    const double* bk = b.row(sparse_->cols[p]);
    for (std::size_t j = 0; j < b.cols; ++j) c[j] += v * bk[j];
  }
}

void LayerInput::tmul_acc(const Matrix& d, Matrix& c) const {
  if (dense_) return gemm_tn_acc(*dense_, d, c);
  if (d.rows != rows() || c.rows != cols() || c.cols != d.cols)
    throw ContractError("sparse gemm_tn shape mismatch");
  for (std::size_t i = 0; i < rows(); ++i) {
    const double* di = d.row(i);
    for (auto p = sparse_->row_ptr[i]; p < sparse_->row_ptr[i + 1]; ++p) {
      const double v = sparse_->values[p];
      double* ck = c.row(sparse_->cols[p]);
      for (std::size_t j = 0; j < d.cols; ++j) ck[j] += v * di[j];
    }
  }
}

Adjacency Adjacency::from_edges(std::size_t n_nodes, const std::vector<graphx::EdgeList>& edges) {
  Adjacency adj;
  adj.n_nodes = n_nodes;
  for (const auto& e : edges) {
    Relation rel;
    rel.ptr.assign(n_nodes + 1, 0);
    for (auto d : e.dst) {
      if (d >= n_nodes) throw ContractError("edge target out of range");
      ++rel.ptr[d + 1];
    }
    for (std::size_t v = 0; v < n_nodes; ++v) rel.ptr[v + 1] += rel.ptr[v];
    rel.src.resize(e.size());
    std::vector<std::uint32_t> fill(rel.ptr.begin(), rel.ptr.end() - 1);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e.src[i] >= n_nodes) throw ContractError("edge source out of range");
      rel.src[fill[e.dst[i]]++] = e.src[i];
    }
    adj.relations.push_back(std::move(rel));
  }
  return adj;
}

Matrix ConvWeights::effective_weight(std::size_t r) const {
  Matrix w(d_in(), d_out());
  for (std::size_t b = 0; b < bases.size(); ++b) axpy(coeffs(r, b), bases[b], w);
  return w;
}

std::vector<std::uint32_t> input_rows(const Adjacency& adj,
                                      const std::vector<std::uint32_t>& targets) {
  std::vector<char> keep(adj.n_nodes, 0);
  for (auto v : targets) {
    keep[v] = 1;
    for (const auto& rel : adj.relations)
      for (auto k = rel.ptr[v]; k < rel.ptr[v + 1]; ++k) keep[rel.src[k]] = 1;
  }
  std::vector<std::uint32_t> rows;
  for (std::size_t v = 0; v < adj.n_nodes; ++v)
    if (keep[v]) rows.push_back(static_cast<std::uint32_t>(v));
  return rows;
}

Matrix sage_layer(const LayerInput& x, const Adjacency& adj, const ConvWeights& w,
                  ConvCache* cache, const std::vector<std::uint32_t>* targets) {
  check_layer_shapes(x, adj, w);
  if (w.self.rows != w.d_in() || w.self.cols != w.d_out())
    throw ContractError("self weight shape mismatch");
  std::vector<std::uint32_t> all;
  if (!targets) {
    all.resize(adj.n_nodes);
    std::iota(all.begin(), all.end(), 0u);
    targets = &all;
  }
  const std::size_t d = w.d_out();
  const std::size_t n_rel = adj.relations.size();
  const std::size_t n_bases = w.bases.size();
  Matrix out(x.rows(), d);
  Accumulator acc(w.d_in());
  if (cache) {
    cache->targets = *targets;
    cache->aggregated.assign(targets->size(), {});
    cache->mixed.assign(targets->size(), {});
  }

  for (std::size_t t = 0; t < targets->size(); ++t) {
    const auto v = (*targets)[t];
    if (v >= adj.n_nodes) throw ContractError("target row out of range");
    double* ov = out.row(v);
    x.for_each_nonzero(v, [&](std::size_t c, double val) { add_scaled(val, w.self.row(c), ov, d); });

    std::vector<SparseVector> aggregated(n_rel);
    bool any = false;
    for (std::size_t r = 0; r < n_rel; ++r) {
      const auto& rel = adj.relations[r];
      const auto b = rel.ptr[v], e = rel.ptr[v + 1];
      if (b == e) continue;
      const double inv = 1.0 / static_cast<double>(e - b);
      for (auto k = b; k < e; ++k)
        x.for_each_nonzero(rel.src[k], [&](std::size_t c, double val) { acc.add(c, inv * val); });
      aggregated[r] = acc.take();
      any = true;
    }
    std::vector<SparseVector> mixed(n_bases);
    if (any) {
      for (std::size_t bs = 0; bs < n_bases; ++bs) {
        for (std::size_t r = 0; r < n_rel; ++r) {
          const double a = w.coeffs(r, bs);
          const auto& ag = aggregated[r];
          for (std::size_t k = 0; k < ag.index.size(); ++k) acc.add(ag.index[k], a * ag.value[k]);
        }
        mixed[bs] = acc.take();
        const auto& m = mixed[bs];
        for (std::size_t k = 0; k < m.index.size(); ++k)
          add_scaled(m.value[k], w.bases[bs].row(m.index[k]), ov, d);
      }
    }
    if (cache) {
      cache->aggregated[t] = std::move(aggregated);
      cache->mixed[t] = std::move(mixed);
    }
  }
  return out;
}

void sage_backward(const LayerInput& x, const Adjacency& adj, const ConvWeights& w,
                   const ConvCache& cache, const Matrix& d_out, ConvWeights& grad, Matrix* dx) {
  const std::size_t d = w.d_out();
  const std::size_t d_in = w.d_in();
  const std::size_t n_rel = adj.relations.size();
  const std::size_t n_bases = w.bases.size();
  // dx path: basis_grad[b] = bases[b] * g, an input-space vector per basis.
  std::vector<std::vector<double>> basis_grad(dx ? n_bases : 0, std::vector<double>(d_in));
  std::vector<double> rel_grad(dx ? d_in : 0);

  for (std::size_t t = 0; t < cache.targets.size(); ++t) {
    const auto v = cache.targets[t];
    const double* g = d_out.row(v);
    if (std::all_of(g, g + d, [](double q) { return q == 0.0; })) continue;

    x.for_each_nonzero(v, [&](std::size_t c, double val) { add_scaled(val, g, grad.self.row(c), d); });
    if (dx) {
      double* dxv = dx->row(v);
      for (std::size_t i = 0; i < d_in; ++i) dxv[i] += row_dot(w.self.row(i), g, d);
    }
    const auto& mixed = cache.mixed[t];
    const auto& aggregated = cache.aggregated[t];
    for (std::size_t bs = 0; bs < mixed.size(); ++bs) {
      const auto& m = mixed[bs];
      for (std::size_t k = 0; k < m.index.size(); ++k)
        add_scaled(m.value[k], g, grad.bases[bs].row(m.index[k]), d);
    }
    if (mixed.empty()) continue;

    if (!dx) {
      for (std::size_t r = 0; r < n_rel; ++r) {
        const auto& ag = aggregated[r];
        for (std::size_t bs = 0; bs < n_bases; ++bs) {
          double s = 0.0;
          for (std::size_t k = 0; k < ag.index.size(); ++k)
            s += ag.value[k] * row_dot(w.bases[bs].row(ag.index[k]), g, d);
          grad.coeffs(r, bs) += s;
        }
      }
      continue;
    }

    for (std::size_t bs = 0; bs < n_bases; ++bs)
      for (std::size_t i = 0; i < d_in; ++i) basis_grad[bs][i] = row_dot(w.bases[bs].row(i), g, d);
    for (std::size_t r = 0; r < n_rel; ++r) {
      const auto& rel = adj.relations[r];
      const auto b = rel.ptr[v], e = rel.ptr[v + 1];
      if (b == e) continue;
      const auto& ag = aggregated[r];
      std::fill(rel_grad.begin(), rel_grad.end(), 0.0);
      for (std::size_t bs = 0; bs < n_bases; ++bs) {
        double s = 0.0;
        for (std::size_t k = 0; k < ag.index.size(); ++k) s += ag.value[k] * basis_grad[bs][ag.index[k]];
        grad.coeffs(r, bs) += s;
        add_scaled(w.coeffs(r, bs), basis_grad[bs].data(), rel_grad.data(), d_in);
      }
      const double inv = 1.0 / static_cast<double>(e - b);
      for (auto k = b; k < e; ++k) add_scaled(inv, rel_grad.data(), dx->row(rel.src[k]), d_in);
    }
  }
}

Matrix gat_layer(const LayerInput& x, const Adjacency& adj, const ConvWeights& w,
                 ConvCache* cache) {
  check_layer_shapes(x, adj, w);
  const std::size_t d = w.d_out();
  const std::size_t n = adj.n_nodes;
  if (w.att_src.rows != w.n_relations() || w.att_src.cols != d || !w.att_src.same_shape(w.att_dst))
    throw ContractError("attention vector shape mismatch");

  Matrix out(n, d);
  auto projected = project(x, w);
  std::vector<Matrix> relation;
  std::vector<std::vector<double>> alphas, logits;
  std::vector<double> ps(n), pd(n);

  for (std::size_t r = 0; r < adj.relations.size(); ++r) {
    const auto& rel = adj.relations[r];
    Matrix z = combine(projected, w.coeffs, r);
    for (std::size_t u = 0; u < n; ++u) {
      ps[u] = row_dot(w.att_src.row(r), z.row(u), d);
      pd[u] = row_dot(w.att_dst.row(r), z.row(u), d);
    }
    std::vector<double> alpha(rel.src.size() + n), logit(rel.src.size() + n);
    for (std::size_t v = 0; v < n; ++v) {
      const auto b = rel.ptr[v], e = rel.ptr[v + 1];
      const std::size_t off = b + v;
      const std::size_t m = e - b + 1;
      auto source = [&](std::size_t i) { return i + 1 < m ? rel.src[b + i] : v; };
      double mx = -INFINITY;
      for (std::size_t i = 0; i < m; ++i) {
        logit[off + i] = ps[source(i)] + pd[v];
        mx = std::max(mx, leaky(logit[off + i]));
      }
      double total = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        alpha[off + i] = std::exp(leaky(logit[off + i]) - mx);
        total += alpha[off + i];
      }
      double* ov = out.row(v);
      for (std::size_t i = 0; i < m; ++i) {
        alpha[off + i] /= total;
        const double* zu = z.row(source(i));
        for (std::size_t j = 0; j < d; ++j) ov[j] += alpha[off + i] * zu[j];
      }
    }
    if (cache) {
      relation.push_back(std::move(z));
      alphas.push_back(std::move(alpha));
      logits.push_back(std::move(logit));
    }
  }
  if (cache) {
    cache->projected = std::move(projected);
    cache->relation = std::move(relation);
    cache->alpha = std::move(alphas);
    cache->logits = std::move(logits);
  }
  return out;
}

void gat_backward(const LayerInput& x, const Adjacency& adj, const ConvWeights& w,
                  const ConvCache& cache, const Matrix& d_out, ConvWeights& grad, Matrix* dx) {
  const std::size_t d = w.d_out();
  const std::size_t n = adj.n_nodes;
  std::vector<Matrix> dprojected(w.bases.size(), Matrix(n, d));
  Matrix dz(n, d);
  std::vector<double> dalpha;

  for (std::size_t r = 0; r < adj.relations.size(); ++r) {
    const auto& rel = adj.relations[r];
    const Matrix& z = cache.relation[r];
    const auto& alpha = cache.alpha[r];
    const auto& logit = cache.logits[r];
    const double* as = w.att_src.row(r);
    const double* ad = w.att_dst.row(r);
    double* gas = grad.att_src.row(r);
    double* gad = grad.att_dst.row(r);
    dz.set_zero();

    for (std::size_t v = 0; v < n; ++v) {
      const auto b = rel.ptr[v], e = rel.ptr[v + 1];
      const std::size_t off = b + v;
      const std::size_t m = e - b + 1;
      auto source = [&](std::size_t i) { return i + 1 < m ? rel.src[b + i] : v; };
      const double* gv = d_out.row(v);
      dalpha.assign(m, 0.0);
      double weighted = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t u = source(i);
        double* du = dz.row(u);
        for (std::size_t j = 0; j < d; ++j) du[j] += alpha[off + i] * gv[j];
        dalpha[i] = row_dot(gv, z.row(u), d);
        weighted += alpha[off + i] * dalpha[i];
      }
      const double* zv = z.row(v);
      for (std::size_t i = 0; i < m; ++i) {
        const double de = alpha[off + i] * (dalpha[i] - weighted);
        const double ds = de * (logit[off + i] > 0.0 ? 1.0 : kLeakySlope);
        if (ds == 0.0) continue;
        const std::size_t u = source(i);
        const double* zu = z.row(u);
        double* du = dz.row(u);
        double* dv = dz.row(v);
        for (std::size_t j = 0; j < d; ++j) {
          gas[j] += ds * zu[j];
          gad[j] += ds * zv[j];
          du[j] += ds * as[j];
          dv[j] += ds * ad[j];
        }
      }
    }
    basis_backward(cache.projected, w.coeffs, r, dz, grad.coeffs, dprojected);
  }
  projection_backward(x, w, dprojected, grad, dx);
}

}  // namespace pkgraph::gnn

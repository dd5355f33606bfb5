#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "pkgraph/cohort.hpp"
#include "pkgraph/error.hpp"
#include "pkgraph/gnn.hpp"
#include "pkgraph/preprocess.hpp"
#include "pkgraph/seed.hpp"
#include "pkgraph/train.hpp"
#include "test_support.hpp"

namespace pkgraph::gnn {
namespace {

using graphx::Direction;
using graphx::EdgeList;
using graphx::GraphVersion;
using graphx::Version;

Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(r, c);
  for (double& v : m.data) v = u(rng);
  return m;
}

ConvWeights random_conv(Arch arch, std::size_t d_in, std::size_t d_out, std::size_t n_rel,
                        std::size_t n_bases, std::mt19937_64& rng) {
  ConvWeights w;
  for (std::size_t b = 0; b < n_bases; ++b) w.bases.push_back(random_matrix(d_in, d_out, rng));
  w.coeffs = random_matrix(n_rel, n_bases, rng);
  if (arch == Arch::Sage) {
    w.self = random_matrix(d_in, d_out, rng);
  } else {
    w.att_src = random_matrix(n_rel, d_out, rng);
    w.att_dst = random_matrix(n_rel, d_out, rng);
  }
  return w;
}

EdgeList edges(std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> pairs) {
  EdgeList e;
  for (auto [s, d] : pairs) {
    e.src.push_back(s);
    e.dst.push_back(d);
  }
  return e;
}

void expect_rows_near(const double* a, const double* b, std::size_t n, double tol) {
  for (std::size_t j = 0; j < n; ++j) EXPECT_NEAR(a[j], b[j], tol) << "column " << j;
}

// X[u] * W written out as a loop, independent of the library kernels.
std::vector<double> row_times(const Matrix& x, std::size_t u, const Matrix& w) {
  std::vector<double> out(w.cols, 0.0);
  for (std::size_t i = 0; i < w.rows; ++i)
    for (std::size_t j = 0; j < w.cols; ++j) out[j] += x(u, i) * w(i, j);
  return out;
}

TEST(SageLayer, NoEdgesIdentitySelf) {
  std::mt19937_64 rng(1);
  const Matrix x = random_matrix(4, 3, rng);
  auto w = random_conv(Arch::Sage, 3, 3, 1, 2, rng);
  w.self = Matrix::identity(3);
  const auto adj = Adjacency::from_edges(4, {EdgeList{}});
  EXPECT_EQ(sage_layer(LayerInput(x), adj, w), x);
}

TEST(SageLayer, SingleEdgeAddsNeighbourTransform) {
  std::mt19937_64 rng(2);
  const Matrix x = random_matrix(2, 3, rng);
  const auto w = random_conv(Arch::Sage, 3, 4, 1, 2, rng);
  const auto out = sage_layer(LayerInput(x), Adjacency::from_edges(2, {edges({{0, 1}})}), w);
  const auto self = row_times(x, 1, w.self);
  const auto msg = row_times(x, 0, w.effective_weight(0));
  for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(out(1, j) - self[j], msg[j], 1e-12);
}

TEST(SageLayer, DuplicateEdgeSameAsSingle) {
  std::mt19937_64 rng(3);
  const Matrix x = random_matrix(3, 3, rng);
  const auto w = random_conv(Arch::Sage, 3, 2, 1, 3, rng);
  const auto once = sage_layer(LayerInput(x), Adjacency::from_edges(3, {edges({{0, 1}})}), w);
  const auto twice =
      sage_layer(LayerInput(x), Adjacency::from_edges(3, {edges({{0, 1}, {0, 1}})}), w);
  expect_rows_near(once.row(1), twice.row(1), 2, 1e-12);
}

TEST(SageLayer, TargetRowsMatchFullEvaluation) {
  std::mt19937_64 rng(4);
  const Matrix x = random_matrix(5, 3, rng);
  const auto w = random_conv(Arch::Sage, 3, 2, 2, 2, rng);
  const auto adj = Adjacency::from_edges(5, {edges({{1, 0}, {2, 0}, {0, 3}}), edges({{4, 0}})});
  const auto full = sage_layer(LayerInput(x), adj, w);
  const std::vector<std::uint32_t> targets = {0, 3};
  const auto part = sage_layer(LayerInput(x), adj, w, nullptr, &targets);
  for (auto v : targets) expect_rows_near(full.row(v), part.row(v), 2, 1e-12);
  EXPECT_EQ(input_rows(adj, {3}), (std::vector<std::uint32_t>{0, 3}));
}

// With one basis per relation and identity coefficients, each relation owns
// its weight matrix outright.
TEST(SageLayer, BasisIdentityMatchesIndependentWeights) {
  std::mt19937_64 rng(5);
  const std::size_t n = 6, d_in = 4, d_out = 3, n_rel = 3;
  const Matrix x = random_matrix(n, d_in, rng);
  auto w = random_conv(Arch::Sage, d_in, d_out, n_rel, n_rel, rng);
  w.coeffs = Matrix::identity(n_rel);
  const std::vector<EdgeList> e = {edges({{1, 0}, {2, 0}, {3, 0}}), edges({{0, 4}, {5, 4}}),
                                   edges({{4, 5}, {4, 5}, {1, 5}})};
  const auto out = sage_layer(LayerInput(x), Adjacency::from_edges(n, e), w);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<double> ref = row_times(x, v, w.self);
    for (std::size_t r = 0; r < n_rel; ++r) {
      std::size_t deg = 0;
      std::vector<double> sum(d_out, 0.0);
      for (std::size_t k = 0; k < e[r].size(); ++k) {
        if (e[r].dst[k] != v) continue;
        ++deg;
        const auto m = row_times(x, e[r].src[k], w.bases[r]);
        for (std::size_t j = 0; j < d_out; ++j) sum[j] += m[j];
      }
      for (std::size_t j = 0; j < d_out; ++j)
        if (deg) ref[j] += sum[j] / static_cast<double>(deg);
    }
    expect_rows_near(out.row(v), ref.data(), d_out, 1e-12);
  }
}

TEST(SageLayer, ShapeMismatchRejected) {
  std::mt19937_64 rng(6);
  const Matrix x = random_matrix(3, 5, rng);
  const auto w = random_conv(Arch::Sage, 4, 2, 1, 1, rng);
  EXPECT_THROW(sage_layer(LayerInput(x), Adjacency::from_edges(3, {EdgeList{}}), w),
               ContractError);
}

TEST(GatLayer, EqualFeaturesSplitAttentionEvenly) {
  std::mt19937_64 rng(7);
  Matrix x(2, 3, 0.5);
  const auto w = random_conv(Arch::Gat, 3, 2, 1, 2, rng);
  ConvCache cache;
  const auto adj = Adjacency::from_edges(2, {edges({{0, 1}})});
  gat_layer(LayerInput(x), adj, w, &cache);
  const std::size_t off = adj.relations[0].ptr[1] + 1;
  EXPECT_NEAR(cache.alpha[0][off], 0.5, 1e-15);
  EXPECT_NEAR(cache.alpha[0][off + 1], 0.5, 1e-15);
}

TEST(GatLayer, IsolatedNodeKeepsOwnTransform) {
  std::mt19937_64 rng(8);
  const Matrix x = random_matrix(3, 3, rng);
  const auto w = random_conv(Arch::Gat, 3, 2, 1, 2, rng);
  const auto out = gat_layer(LayerInput(x), Adjacency::from_edges(3, {edges({{0, 1}})}), w);
  const auto expected = row_times(x, 2, w.effective_weight(0));
  expect_rows_near(out.row(2), expected.data(), 2, 1e-12);
}

TEST(GatLayer, AttentionIsSoftmaxPerTarget) {
  std::mt19937_64 rng(9);
  const Matrix x = random_matrix(3, 4, rng);
  const auto w = random_conv(Arch::Gat, 4, 3, 1, 2, rng);
  const auto adj = Adjacency::from_edges(3, {edges({{1, 0}, {2, 0}, {0, 1}, {0, 2}})});
  ConvCache cache;
  gat_layer(LayerInput(x), adj, w, &cache);
  const Matrix z = [&] {
    Matrix m(3, 3);
    for (std::size_t u = 0; u < 3; ++u) {
      const auto r = row_times(x, u, w.effective_weight(0));
      std::copy(r.begin(), r.end(), m.row(u));
    }
    return m;
  }();
  auto score = [&](std::size_t u, std::size_t v) {
    double s = 0.0;
    for (std::size_t j = 0; j < 3; ++j) s += w.att_src(0, j) * z(u, j) + w.att_dst(0, j) * z(v, j);
    return s > 0.0 ? s : kLeakySlope * s;
  };
  // Target 0 listens to 1, 2 and itself.
  const double e1 = std::exp(score(1, 0)), e2 = std::exp(score(2, 0)), e0 = std::exp(score(0, 0));
  const std::size_t off = adj.relations[0].ptr[0];
  EXPECT_NEAR(cache.alpha[0][off], e1 / (e0 + e1 + e2), 1e-12);
  EXPECT_NEAR(cache.alpha[0][off + 1], e2 / (e0 + e1 + e2), 1e-12);
  EXPECT_NEAR(cache.alpha[0][off + 2], e0 / (e0 + e1 + e2), 1e-12);
  for (std::size_t v = 0; v < 3; ++v) {
    double total = 0.0;
    const std::size_t b = adj.relations[0].ptr[v] + v, m = adj.relations[0].ptr[v + 1] - adj.relations[0].ptr[v] + 1;
    for (std::size_t i = 0; i < m; ++i) total += cache.alpha[0][b + i];
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

ModelSpec spec_for(const graphx::NumericGraph& g, Arch arch, int variant) {
  ModelSpec s;
  s.arch = arch;
  s.variant = variant;
  s.in_dim = g.vocab_size();
  s.n_relations = g.relations.size();
  return s;
}

TEST(Model, ZeroParametersGiveHalf) {
  std::mt19937_64 rng(10);
  const auto sg = testing::random_small_graph(rng, {Version::V1, Direction::Undirected});
  for (auto arch : {Arch::Sage, Arch::Gat}) {
    for (int variant : {1, 2}) {
      const auto p = zeros_like(init_params(spec_for(sg.graph, arch, variant), 1));
      EXPECT_EQ(model_forward(p, prepare(sg.graph)), 0.5);
    }
  }
}

TEST(Model, PermutationInvariant) {
  std::mt19937_64 rng(11);
  for (auto version : testing::all_versions()) {
    const auto sg = testing::random_small_graph(rng, version);
    std::vector<std::uint32_t> perm(sg.graph.n_nodes);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto permuted = testing::permute_nodes(sg.graph, perm);
    ASSERT_NO_THROW(graphx::validate(permuted));
    for (auto arch : {Arch::Sage, Arch::Gat}) {
      for (int variant : {1, 2}) {
        const auto p = init_params(spec_for(sg.graph, arch, variant), 3);
        const double a = model_forward(p, prepare(sg.graph));
        const double b = model_forward(p, prepare(permuted));
        EXPECT_NEAR(a, b, 1e-12);
        EXPECT_GT(a, 0.0);
        EXPECT_LT(a, 1.0);
      }
    }
  }
}

// In a directed star no messages reach the leaves, so perturbing one leaf
// leaves every other leaf's first-layer output untouched.
TEST(Model, DirectedLeavesIgnoreOtherNodes) {
  std::mt19937_64 rng(12);
  for (auto v : {Version::V1, Version::V2, Version::V3}) {
    const auto sg = testing::random_small_graph(rng, {v, Direction::Directed});
    auto changed = sg.graph;
    const std::uint32_t leaf = 1;
    auto row = changed.features.dense_row(leaf);
    row[rng() % row.size()] += 3;
    graphx::SparseCounts f;
    f.n_cols = changed.features.n_cols;
    for (std::size_t i = 0; i < changed.n_nodes; ++i)
      f.append_row(i == leaf ? row : sg.graph.features.dense_row(i));
    changed.features = f;
    for (auto arch : {Arch::Sage, Arch::Gat}) {
      const auto p = init_params(spec_for(sg.graph, arch, 1), 5);
      const auto before = first_layer_output(p, prepare(sg.graph));
      const auto after = first_layer_output(p, prepare(changed));
      for (std::size_t u = 1; u < sg.graph.n_nodes; ++u) {
        if (u == leaf) continue;
        for (std::size_t j = 0; j < before.cols; ++j) EXPECT_EQ(before(u, j), after(u, j));
      }
      bool patient_moved = false;
      for (std::size_t j = 0; j < before.cols; ++j)
        patient_moved = patient_moved || before(0, j) != after(0, j);
      EXPECT_TRUE(patient_moved);
    }
  }
}

TEST(Model, NonFiniteParameterRaisesTaggedError) {
  std::mt19937_64 rng(13);
  const auto sg = testing::random_small_graph(rng, {Version::V3, Direction::Undirected});
  auto p = init_params(spec_for(sg.graph, Arch::Sage, 1), 2);
  std::fill(p.layer1.self.data.begin(), p.layer1.self.data.end(), NAN);
  try {
    model_forward(p, prepare(sg.graph));
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_EQ(e.tag(), "layer1");
  }
}

TEST(Model, InputWidthMismatchRejected) {
  std::mt19937_64 rng(14);
  const auto sg = testing::random_small_graph(rng, {Version::V3, Direction::Undirected});
  auto s = spec_for(sg.graph, Arch::Sage, 1);
  s.in_dim += 1;
  EXPECT_THROW(model_forward(init_params(s, 1), prepare(sg.graph)), ContractError);
}

TEST(Loss, BinaryCrossEntropy) {
  EXPECT_NEAR(bce_loss(0.5, 1), std::log(2.0), 1e-15);
  EXPECT_NEAR(bce_loss(1.0, 1), 1e-12, 1e-15);
  EXPECT_NEAR(bce_loss(1.0 / (1.0 + std::exp(-1.0)), 0), 1.3133, 1e-4);
  EXPECT_NEAR(bce_loss(0.731, 0), -std::log(0.269), 1e-12);
  EXPECT_TRUE(std::isfinite(bce_loss(0.0, 1)));
}

TEST(Gradients, MatchFiniteDifferences) {
  std::mt19937_64 rng(15);
  for (auto version : {GraphVersion{Version::V1, Direction::Undirected},
                       GraphVersion{Version::V4, Direction::Directed}}) {
    const auto sg = testing::random_small_graph(rng, version);
    const auto g = prepare(sg.graph);
    for (auto arch : {Arch::Sage, Arch::Gat}) {
      for (int variant : {1, 2}) {
        auto s = spec_for(sg.graph, arch, variant);
        s.hidden1 = 8;
        s.hidden2 = 5;
        const auto check =
            testing::finite_difference_check(init_params(s, 17), g, sg.graph.label);
        EXPECT_LE(check.worst, 1e-4) << name(arch) << " v" << variant << " " << check.tensor;
      }
    }
  }
}

// Relations without edges cannot influence the output: their coefficient rows
// (and for GAT their attention vectors) get exactly zero gradient.
TEST(Gradients, UnusedRelationGetsZeroGradient) {
  auto r = testing::minimal_record();
  const auto tg = pkg::build_pkg(r);
  const auto graph = graphx::to_numeric(tg, {Version::V1, Direction::Undirected},
                                        graphx::Vocabulary::build({tg}), 1);
  const auto g = prepare(graph);
  const std::size_t unused = static_cast<std::size_t>(
      std::find(graph.relations.begin(), graph.relations.end(), hspo::Relation::FollowsReligion) -
      graph.relations.begin());
  ASSERT_TRUE(graph.edges[unused].src.empty());
  for (auto arch : {Arch::Sage, Arch::Gat}) {
    const auto p = init_params(spec_for(graph, arch, 1), 4);
    auto grads = zeros_like(p);
    accumulate_gradients(p, g, 1, grads);
    for (const auto* layer : {&grads.layer1, &grads.layer2}) {
      if (arch == Arch::Sage) {
        for (std::size_t b = 0; b < layer->coeffs.cols; ++b)
          EXPECT_EQ(layer->coeffs(unused, b), 0.0);
      } else {
        for (std::size_t j = 0; j < layer->att_src.cols; ++j) {
          EXPECT_EQ(layer->att_src(unused, j), 0.0);
          EXPECT_EQ(layer->att_dst(unused, j), 0.0);
        }
      }
    }
  }
}

// dL/da[r,b] = <dL/dW_r, V_b>. dL/dW_r is read off an equivalent model whose
// bases are the effective relation weights with identity coefficients.
TEST(Gradients, CoefficientGradientIsWeightGradientProjection) {
  std::mt19937_64 rng(16);
  const auto sg = testing::random_small_graph(rng, {Version::V1, Direction::Undirected});
  const auto g = prepare(sg.graph);
  for (auto arch : {Arch::Sage, Arch::Gat}) {
    auto s = spec_for(sg.graph, arch, 2);
    s.hidden1 = 6;
    s.hidden2 = 4;
    const auto p = init_params(s, 8);
    auto grads = zeros_like(p);
    accumulate_gradients(p, g, sg.graph.label, grads);

    auto es = s;
    es.n_bases = s.n_relations;
    auto expanded = init_params(es, 8);
    auto expand = [&](const ConvWeights& from, ConvWeights& to) {
      for (std::size_t r = 0; r < s.n_relations; ++r) to.bases[r] = from.effective_weight(r);
      to.coeffs = Matrix::identity(s.n_relations);
      to.self = from.self;
      to.att_src = from.att_src;
      to.att_dst = from.att_dst;
    };
    expand(p.layer1, expanded.layer1);
    expand(p.layer2, expanded.layer2);
    expand(p.layer3, expanded.layer3);
    ASSERT_NEAR(model_forward(expanded, g), model_forward(p, g), 1e-12);
    auto egrads = zeros_like(expanded);
    accumulate_gradients(expanded, g, sg.graph.label, egrads);

    const std::pair<const ConvWeights*, const ConvWeights*> layers[] = {
        {&p.layer1, &egrads.layer1}, {&p.layer2, &egrads.layer2}, {&p.layer3, &egrads.layer3}};
    const ConvWeights* coeff_grads[] = {&grads.layer1, &grads.layer2, &grads.layer3};
    for (std::size_t l = 0; l < 3; ++l) {
      const auto& [params, dw] = layers[l];
      for (std::size_t r = 0; r < s.n_relations; ++r) {
        for (std::size_t b = 0; b < s.n_bases; ++b) {
          const double expected = dot(dw->bases[r], params->bases[b]);
          EXPECT_NEAR(coeff_grads[l]->coeffs(r, b), expected,
                      1e-10 * std::max(1.0, std::abs(expected)));
        }
      }
    }
  }
}

ModelParams scalar_model() {
  ModelSpec s;
  s.in_dim = 1;
  s.n_relations = 1;
  s.n_bases = 1;
  s.hidden1 = 1;
  s.hidden2 = 1;
  return init_params(s, 3);
}

TEST(Adam, ZeroGradientKeepsParametersAndDecaysMoments) {
  auto p = scalar_model();
  const auto before = p;
  auto state = AdamState::for_params(p);
  state.m.out_bias(0, 0) = 0.5;
  state.v.out_bias(0, 0) = 0.25;
  adam_step(p, zeros_like(p), state, {});
  EXPECT_EQ(state.step, 1u);
  EXPECT_DOUBLE_EQ(state.m.out_bias(0, 0), 0.45);
  EXPECT_DOUBLE_EQ(state.v.out_bias(0, 0), 0.25 * 0.999);
  for (std::size_t k = 0; k < p.tensors().size(); ++k) {
    if (p.tensors()[k].first == "output.bias") continue;
    EXPECT_EQ(*p.tensors()[k].second, *before.tensors()[k].second);
  }
}

TEST(Adam, ScalarTraceMatchesHandRolled) {
  auto p = scalar_model();
  auto state = AdamState::for_params(p);
  AdamConfig c;
  c.learning_rate = 0.1;
  const double g_seq[] = {0.8, -0.3};
  double theta = p.out_bias(0, 0), m = 0.0, v = 0.0;
  for (int t = 1; t <= 2; ++t) {
    const double g = g_seq[t - 1];
    auto grads = zeros_like(p);
    grads.out_bias(0, 0) = g;
    adam_step(p, grads, state, c);
    m = 0.9 * m + 0.1 * g;
    v = 0.999 * v + 0.001 * g * g;
    const double mhat = m / (1.0 - std::pow(0.9, t));
    const double vhat = v / (1.0 - std::pow(0.999, t));
    theta -= 0.1 * mhat / (std::sqrt(vhat) + 1e-8);
    EXPECT_NEAR(p.out_bias(0, 0), theta, 1e-15);
  }
}

TEST(Adam, FirstStepClosedForm) {
  auto p = scalar_model();
  const double start = p.out_bias(0, 0);
  auto state = AdamState::for_params(p);
  auto grads = zeros_like(p);
  const double g = -2.5e-3;
  grads.out_bias(0, 0) = g;
  adam_step(p, grads, state, {});
  EXPECT_NEAR(p.out_bias(0, 0), start - 0.001 * g / (std::abs(g) + 1e-8), 1e-15);
}

std::vector<graphx::NumericGraph> planted_graphs(std::size_t count, double noise) {
  cohort::CohortConfig c;
  c.n_patients = count;
  c.seed = 31;
  cohort::PlantedSignal s;
  s.bias = -4.0;
  s.noise_std = noise;
  s.weights = {{"diagnosis:584", 6.0}, {"diagnosis:038", 6.0}, {"medication:vancomycin", 6.0}};
  c.planted_signal = s;
  auto records = preprocess::run(cohort::generate_cohort(c), {});
  if (records.size() > count) records.resize(count);
  std::vector<pkg::TripleGraph> corpus;
  for (const auto& r : records) corpus.push_back(pkg::build_pkg(r));
  const auto vocab = graphx::Vocabulary::build(corpus);
  std::vector<graphx::NumericGraph> out;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    out.push_back(graphx::to_numeric(corpus[i], {Version::V3, Direction::Undirected}, vocab,
                                     *records[i].readmitted_within_window ? 1 : 0));
  return out;
}

TEST(Train, LossDecreasesEarly) {
  const auto graphs = planted_graphs(500, 0.0);
  ASSERT_EQ(graphs.size(), 500u);
  TrainConfig c;
  c.epochs = 5;
  c.seed = 2;
  const auto result = train(graphs, c, Arch::Sage, 1);
  ASSERT_EQ(result.history.size(), 5u);
  int stalls = 0;
  for (std::size_t e = 1; e < result.history.size(); ++e)
    stalls += result.history[e].train_loss < result.history[e - 1].train_loss ? 0 : 1;
  EXPECT_LE(stalls, 1);
}

TEST(Train, DeterministicAndZeroEpochs) {
  const auto graphs = planted_graphs(120, 0.25);
  TrainConfig c;
  c.epochs = 2;
  c.seed = 9;
  c.hidden1 = 8;
  c.hidden2 = 4;
  const auto a = train(graphs, c, Arch::Gat, 2);
  const auto b = train(graphs, c, Arch::Gat, 2);
  std::ostringstream ha, hb;
  write_history(ha, a.history);
  write_history(hb, b.history);
  EXPECT_EQ(ha.str(), hb.str());
  EXPECT_EQ(ha.str().substr(0, ha.str().find('\n')), "epoch,train_loss,val_acc,val_f1");

  c.epochs = 0;
  const auto z = train(graphs, c, Arch::Sage, 1);
  EXPECT_TRUE(z.history.empty());
  EXPECT_EQ(z.best_epoch, 0);
  ModelSpec s = z.params.spec;
  const auto init = init_params(s, derive_seed(c.seed, "init"));
  for (std::size_t k = 0; k < init.tensors().size(); ++k)
    EXPECT_EQ(*z.params.tensors()[k].second, *init.tensors()[k].second);
}

TEST(Train, ValidationDisjointFromTraining) {
  const auto graphs = planted_graphs(120, 0.25);
  TrainConfig c;
  c.epochs = 1;
  c.hidden1 = 4;
  c.hidden2 = 2;
  const auto r = train(graphs, c, Arch::Sage, 1);
  std::vector<std::size_t> all = r.train_indices;
  all.insert(all.end(), r.validation_indices.begin(), r.validation_indices.end());
  std::sort(all.begin(), all.end());
  EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
  EXPECT_EQ(all.size(), graphs.size());
}

TEST(Train, SingleClassRejected) {
  auto graphs = planted_graphs(60, 0.25);
  for (auto& g : graphs) g.label = 0;
  EXPECT_THROW(train(graphs, TrainConfig{}, Arch::Sage, 1), ValidationError);
}

TEST(Checkpoint, RoundTrip) {
  std::mt19937_64 rng(18);
  const auto sg = testing::random_small_graph(rng, {Version::V4, Direction::Undirected});
  const auto dir = std::filesystem::temp_directory_path() / "pkgraph_gnn_test";
  std::filesystem::create_directories(dir);
  for (auto arch : {Arch::Sage, Arch::Gat}) {
    for (int variant : {1, 2}) {
      const auto p = init_params(spec_for(sg.graph, arch, variant), 6);
      save_checkpoint(dir / "m.ckpt", p);
      const auto q = load_checkpoint(dir / "m.ckpt");
      EXPECT_EQ(q.spec, p.spec);
      EXPECT_EQ(q.tag(), p.tag());
      EXPECT_EQ(model_forward(q, prepare(sg.graph)), model_forward(p, prepare(sg.graph)));
    }
  }
  std::ofstream(dir / "bad.ckpt") << "PKGCKPT1 truncated";
  EXPECT_THROW(load_checkpoint(dir / "bad.ckpt"), ValidationError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace pkgraph::gnn

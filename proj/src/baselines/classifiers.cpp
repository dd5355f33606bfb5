#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "pkgraph/baselines.hpp"
#include "pkgraph/error.hpp"
#include "pkgraph/seed.hpp"

namespace pkgraph::baselines {
namespace {

using nlohmann::json;

void require_two_classes(const TabularDataset& data) {
  bool seen[2] = {false, false};
  for (int y : data.labels) {
    if (y != 0 && y != 1) throw ValidationError("training rows must be labeled 0 or 1");
    seen[y] = true;
  }
  if (!seen[0] || !seen[1]) throw ValidationError("training data must contain both classes");
}

double gini(double pos, double total) {
  if (total <= 0.0) return 0.0;
  const double p = pos / total;
  return 2.0 * p * (1.0 - p);
}

}  // namespace

// ---- KNN

void Knn::fit(const TabularDataset& data) {
  require_two_classes(data);
  if (k_ == 0) throw ConfigError("k must be positive");
  d_ = data.n_cols();
  x_ = data.values;
  y_ = data.labels;
}

double Knn::score(const double* row) const {
  const std::size_t n = y_.size();
  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = x_.data() + i * d_;
    double s = 0.0;
    for (std::size_t j = 0; j < d_; ++j) {
      const double t = xi[j] - row[j];
      s += t * t;
    }
    dist[i] = {s, i};
  }
  // Every point tied with the k-th nearest distance votes.
  const std::size_t k = std::min(k_, n);
  std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1), dist.end());
  const double radius = dist[k - 1].first;
  std::size_t voters = 0, positives = 0;
  for (const auto& [s, i] : dist) {
    if (s > radius) continue;
    ++voters;
    positives += static_cast<std::size_t>(y_[i]);
  }
  return static_cast<double>(positives) / static_cast<double>(voters);
}

json Knn::to_json() const {
  return {{"model", name()}, {"k", k_}, {"d", d_}, {"x", x_}, {"y", y_}};
}

Knn Knn::from_json(const json& j) {
  Knn m(j.at("k").get<std::size_t>());
  m.d_ = j.at("d").get<std::size_t>();
  m.x_ = j.at("x").get<std::vector<double>>();
  m.y_ = j.at("y").get<std::vector<int>>();
  return m;
}

// ---- Gaussian naive Bayes

void GaussianNb::fit(const TabularDataset& data) {
  require_two_classes(data);
  const std::size_t d = data.n_cols();
  double count[2] = {0.0, 0.0};
  for (int c : {0, 1}) {
    mean_[c].assign(d, 0.0);
    var_[c].assign(d, 0.0);
  }
  for (std::size_t i = 0; i < data.n_rows; ++i) {
    const int c = data.labels[i];
    count[c] += 1.0;
    for (std::size_t j = 0; j < d; ++j) mean_[c][j] += data.row(i)[j];
  }
  for (int c : {0, 1})
    for (auto& m : mean_[c]) m /= count[c];
  for (std::size_t i = 0; i < data.n_rows; ++i) {
    const int c = data.labels[i];
    for (std::size_t j = 0; j < d; ++j) {
      const double t = data.row(i)[j] - mean_[c][j];
      var_[c][j] += t * t;
    }
  }
  for (int c : {0, 1}) {
    for (auto& v : var_[c]) v = std::max(v / count[c], kVarianceFloor);
    log_prior_[c] = std::log(count[c] / static_cast<double>(data.n_rows));
  }
}

double GaussianNb::score(const double* row) const {
  double ll[2];
  for (int c : {0, 1}) {
    ll[c] = log_prior_[c];
    for (std::size_t j = 0; j < mean_[c].size(); ++j) {
      const double t = row[j] - mean_[c][j];
      ll[c] -= 0.5 * (std::log(2.0 * M_PI * var_[c][j]) + t * t / var_[c][j]);
    }
  }
  return 1.0 / (1.0 + std::exp(ll[0] - ll[1]));
}

json GaussianNb::to_json() const {
  return {{"model", name()},
          {"log_prior", {log_prior_[0], log_prior_[1]}},
          {"mean", {mean_[0], mean_[1]}},
          {"var", {var_[0], var_[1]}}};
}

GaussianNb GaussianNb::from_json(const json& j) {
  GaussianNb m;
  for (int c : {0, 1}) {
    m.log_prior_[c] = j.at("log_prior").at(c).get<double>();
    m.mean_[c] = j.at("mean").at(c).get<std::vector<double>>();
    m.var_[c] = j.at("var").at(c).get<std::vector<double>>();
  }
  return m;
}

// ---- CART

void DecisionTree::fit(const TabularDataset& data) {
  fit(data, std::vector<double>(data.n_rows, 1.0));
}

void DecisionTree::fit(const TabularDataset& data, const std::vector<double>& weights) {
  require_two_classes(data);
  if (weights.size() != data.n_rows) throw ContractError("one weight per row required");
  nodes_.clear();
  std::vector<std::size_t> idx(data.n_rows);
  std::iota(idx.begin(), idx.end(), 0);
  build(data, weights, idx, 0, idx.size(), 0);
}

int DecisionTree::build(const TabularDataset& data, const std::vector<double>& w,
                        std::vector<std::size_t>& idx, std::size_t begin, std::size_t end,
                        int depth) {
  double total = 0.0, pos = 0.0;
  for (auto k = begin; k < end; ++k) {
    total += w[idx[k]];
    if (data.labels[idx[k]] == 1) pos += w[idx[k]];
  }
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({});
  nodes_[id].positive = total > 0.0 ? pos / total : 0.5;

  const std::size_t m = end - begin;
  if (depth >= max_depth_ || m < 2 * min_leaf_ || pos <= 0.0 || pos >= total) return id;

  const double parent = total * gini(pos, total);
  double best_impurity = parent - 1e-12;
  int best_feature = -1;
  double best_threshold = 0.0;
  std::vector<std::pair<double, std::size_t>> column(m);

  for (std::size_t f = 0; f < data.n_cols(); ++f) {
    for (std::size_t k = 0; k < m; ++k) column[k] = {data.row(idx[begin + k])[f], idx[begin + k]};
    std::sort(column.begin(), column.end());
    if (column.front().first == column.back().first) continue;
    double lw = 0.0, lp = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
      const auto i = column[k].second;
      lw += w[i];
      if (data.labels[i] == 1) lp += w[i];
      if (column[k].first == column[k + 1].first) continue;
      if (k + 1 < min_leaf_ || m - k - 1 < min_leaf_) continue;
      const double impurity = lw * gini(lp, lw) + (total - lw) * gini(pos - lp, total - lw);
      if (impurity < best_impurity) {
        best_impurity = impurity;
        best_feature = static_cast<int>(f);
        best_threshold = 0.5 * (column[k].first + column[k + 1].first);
      }
    }
  }
  if (best_feature < 0) return id;

  const auto mid = std::stable_partition(
      idx.begin() + static_cast<std::ptrdiff_t>(begin), idx.begin() + static_cast<std::ptrdiff_t>(end),
      [&](std::size_t i) { return data.row(i)[best_feature] <= best_threshold; });
  const auto split = static_cast<std::size_t>(mid - idx.begin());
  nodes_[id].feature = best_feature;
  nodes_[id].threshold = best_threshold;
  const int left = build(data, w, idx, begin, split, depth + 1);
  const int right = build(data, w, idx, split, end, depth + 1);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

double DecisionTree::score(const double* row) const {
  if (nodes_.empty()) throw ContractError("decision tree is not fitted");
  int n = 0;
  while (nodes_[n].feature >= 0)
    n = row[nodes_[n].feature] <= nodes_[n].threshold ? nodes_[n].left : nodes_[n].right;
  return nodes_[n].positive;
}

json DecisionTree::to_json() const {
  json nodes = json::array();
  for (const auto& n : nodes_)
    nodes.push_back({n.feature, n.threshold, n.left, n.right, n.positive});
  return {{"model", name()}, {"max_depth", max_depth_}, {"min_leaf", min_leaf_}, {"nodes", nodes}};
}

DecisionTree DecisionTree::from_json(const json& j) {
  DecisionTree t(j.at("max_depth").get<int>(), j.at("min_leaf").get<std::size_t>());
  for (const auto& n : j.at("nodes"))
    t.nodes_.push_back({n.at(0).get<int>(), n.at(1).get<double>(), n.at(2).get<int>(),
                        n.at(3).get<int>(), n.at(4).get<double>()});
  return t;
}

// ---- AdaBoost

void AdaBoost::fit(const TabularDataset& data) {
  require_two_classes(data);
  if (n_stumps_ < 1) throw ConfigError("AdaBoost needs at least one stump");
  stumps_.clear();
  alphas_.clear();
  const std::size_t n = data.n_rows;
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  for (int m = 0; m < n_stumps_; ++m) {
    DecisionTree stump(1, 1);
    stump.fit(data, w);
    double err = 0.0;
    std::vector<bool> miss(n);
    for (std::size_t i = 0; i < n; ++i) {
      miss[i] = stump.predict(data.row(i)) != data.labels[i];
      if (miss[i]) err += w[i];
    }
    if (err >= 0.5) {
      if (stumps_.empty()) {
        stumps_.push_back(std::move(stump));
        alphas_.push_back(1.0);
      }
      break;
    }
    const double alpha = 0.5 * std::log((1.0 - err) / std::max(err, 1e-10));
    stumps_.push_back(std::move(stump));
    alphas_.push_back(alpha);
    if (err <= 0.0) break;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] *= std::exp(miss[i] ? alpha : -alpha);
      sum += w[i];
    }
    for (auto& wi : w) wi /= sum;
  }
}

double AdaBoost::margin(const double* row) const {
  double s = 0.0;
  for (std::size_t m = 0; m < stumps_.size(); ++m)
    s += alphas_[m] * (stumps_[m].predict(row) == 1 ? 1.0 : -1.0);
  return s;
}

double AdaBoost::score(const double* row) const {
  double total = 0.0;
  for (double a : alphas_) total += a;
  return total > 0.0 ? 0.5 * (1.0 + margin(row) / total) : 0.5;
}

int AdaBoost::predict(const double* row) const { return margin(row) >= 0.0 ? 1 : 0; }

json AdaBoost::to_json() const {
  json stumps = json::array();
  for (const auto& s : stumps_) stumps.push_back(s.to_json());
  return {{"model", name()}, {"n_stumps", n_stumps_}, {"alphas", alphas_}, {"stumps", stumps}};
}

AdaBoost AdaBoost::from_json(const json& j) {
  AdaBoost a(j.at("n_stumps").get<int>());
  a.alphas_ = j.at("alphas").get<std::vector<double>>();
  for (const auto& s : j.at("stumps")) a.stumps_.push_back(DecisionTree::from_json(s));
  return a;
}

// ---- Linear SVM

void LinearSvm::fit(const TabularDataset& data) {
  require_two_classes(data);
  const std::size_t n = data.n_rows, d = data.n_cols();
  mean_.assign(d, 0.0);
  scale_.assign(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) mean_[j] += data.row(i)[j];
  for (auto& m : mean_) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double t = data.row(i)[j] - mean_[j];
      scale_[j] += t * t;
    }
  for (auto& s : scale_) {
    s = std::sqrt(s / static_cast<double>(n));
    s = s > 0.0 ? 1.0 / s : 0.0;
  }

  w_.assign(d, 0.0);
  b_ = 0.0;
  std::vector<double> z(d);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(derive_seed(seed_, "svm"));
  for (int e = 0; e < epochs_; ++e) {
    std::shuffle(order.begin(), order.end(), rng);
    for (auto i : order) {
      const double y = data.labels[i] == 1 ? 1.0 : -1.0;
      double f = b_;
      for (std::size_t j = 0; j < d; ++j) {
        z[j] = (data.row(i)[j] - mean_[j]) * scale_[j];
        f += w_[j] * z[j];
      }
      const bool violated = y * f < 1.0;
      for (std::size_t j = 0; j < d; ++j)
        w_[j] -= lr_ * (l2_ * w_[j] - (violated ? y * z[j] : 0.0));
      if (violated) b_ += lr_ * y;
    }
  }
}

double LinearSvm::decision(const double* row) const {
  double f = b_;
  for (std::size_t j = 0; j < w_.size(); ++j) f += w_[j] * (row[j] - mean_[j]) * scale_[j];
  return f;
}

double LinearSvm::score(const double* row) const {
  return 1.0 / (1.0 + std::exp(-decision(row)));
}

json LinearSvm::to_json() const {
  return {{"model", name()}, {"seed", seed_}, {"epochs", epochs_}, {"learning_rate", lr_},
          {"l2", l2_},       {"mean", mean_}, {"scale", scale_},   {"w", w_},
          {"b", b_}};
}

LinearSvm LinearSvm::from_json(const json& j) {
  LinearSvm s(j.at("seed").get<std::uint64_t>(), j.at("epochs").get<int>(),
              j.at("learning_rate").get<double>(), j.at("l2").get<double>());
  s.mean_ = j.at("mean").get<std::vector<double>>();
  s.scale_ = j.at("scale").get<std::vector<double>>();
  s.w_ = j.at("w").get<std::vector<double>>();
  s.b_ = j.at("b").get<double>();
  return s;
}

std::unique_ptr<Classifier> make_classifier(const std::string& name, std::uint64_t seed) {
  if (name == "knn") return std::make_unique<Knn>();
  if (name == "naive_bayes") return std::make_unique<GaussianNb>();
  if (name == "decision_tree") return std::make_unique<DecisionTree>();
  if (name == "adaboost") return std::make_unique<AdaBoost>();
  if (name == "linear_svm") return std::make_unique<LinearSvm>(seed);
  throw ConfigError("unknown baseline '" + name + "'");
}

}  // namespace pkgraph::baselines

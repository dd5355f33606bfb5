#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>
#include "pkgraph/record.hpp"

namespace pkgraph::baselines {

struct Column {
  enum class Kind : std::uint8_t { OneHot, Ordinal };
  std::string name;
  Kind kind = Kind::OneHot;
  bool operator==(const Column&) const = default;
};

struct TabularDataset {
  std::size_t n_rows = 0;
  std::vector<Column> columns;
  std::vector<double> values;  // row-major
  std::vector<int> labels;     // -1 when the record is unlabeled

  std::size_t n_cols() const { return columns.size(); }
  const double* row(std::size_t i) const { return values.data() + i * columns.size(); }
  // Rows in the given order, sharing the column layout.
  TabularDataset subset(const std::vector<std::size_t>& rows) const;
};

// Code/name universes and categorical levels learned from a corpus.
// Columns: diagnosis, medication and procedure one-hot blocks (each sorted),
// then the categorical columns (sorted by name) holding 1-based level indices
// with 0 for missing values.
class TabularEncoder {
 public:
  static TabularEncoder fit(const std::vector<AdmissionRecord>& corpus);
  TabularDataset transform(const std::vector<AdmissionRecord>& records) const;
  const std::vector<Column>& columns() const { return columns_; }

 private:
  std::vector<Column> columns_;
  std::map<std::string, std::size_t> onehot_;
  std::map<std::string, std::map<std::string, int>> levels_;
};

TabularDataset encode_tabular(const std::vector<AdmissionRecord>& records);

class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual std::string name() const = 0;
  // Throws ValidationError unless both classes are present.
  virtual void fit(const TabularDataset& data) = 0;
  // Score in [0,1] for the positive class (a vote share for KNN and AdaBoost).
  virtual double score(const double* row) const = 0;
  virtual int predict(const double* row) const { return score(row) >= 0.5 ? 1 : 0; }
  virtual nlohmann::json to_json() const = 0;
};

// Euclidean k-nearest neighbours. Points tied with the k-th distance all vote;
// a tied vote goes to the positive class.
class Knn : public Classifier {
 public:
  explicit Knn(std::size_t k = 5) : k_(k) {}
  std::string name() const override { return "knn"; }
  void fit(const TabularDataset& data) override;
  double score(const double* row) const override;
  nlohmann::json to_json() const override;
  static Knn from_json(const nlohmann::json& j);

 private:
  std::size_t k_;
  std::size_t d_ = 0;
  std::vector<double> x_;
  std::vector<int> y_;
};

class GaussianNb : public Classifier {
 public:
  static constexpr double kVarianceFloor = 1e-9;
  std::string name() const override { return "naive_bayes"; }
  void fit(const TabularDataset& data) override;
  double score(const double* row) const override;
  nlohmann::json to_json() const override;
  static GaussianNb from_json(const nlohmann::json& j);

 private:
  double log_prior_[2] = {0.0, 0.0};
  std::vector<double> mean_[2];
  std::vector<double> var_[2];
};

class DecisionTree : public Classifier {
 public:
  explicit DecisionTree(int max_depth = 12, std::size_t min_leaf = 2)
      : max_depth_(max_depth), min_leaf_(min_leaf) {}
  std::string name() const override { return "decision_tree"; }
  void fit(const TabularDataset& data) override;
  // Weighted fit; weights must be nonnegative with a positive sum.
  void fit(const TabularDataset& data, const std::vector<double>& weights);
  double score(const double* row) const override;
  nlohmann::json to_json() const override;
  static DecisionTree from_json(const nlohmann::json& j);
  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    int feature = -1;  // -1: leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double positive = 0.0;  // weighted share of positives
  };
  int build(const TabularDataset& data, const std::vector<double>& w,
            std::vector<std::size_t>& idx, std::size_t begin, std::size_t end, int depth);

  int max_depth_;
  std::size_t min_leaf_;
  std::vector<Node> nodes_;
};

// Discrete two-class boosting over depth-1 trees.
class AdaBoost : public Classifier {
 public:
  explicit AdaBoost(int n_stumps = 50) : n_stumps_(n_stumps) {}
  std::string name() const override { return "adaboost"; }
  void fit(const TabularDataset& data) override;
  double score(const double* row) const override;
  int predict(const double* row) const override;
  nlohmann::json to_json() const override;
  static AdaBoost from_json(const nlohmann::json& j);
  std::size_t stage_count() const { return stumps_.size(); }

 private:
  double margin(const double* row) const;
  int n_stumps_;
  std::vector<DecisionTree> stumps_;
  std::vector<double> alphas_;
};

// Hinge loss with L2 penalty, minimised by per-sample sub-gradient steps over
// standardised features.
class LinearSvm : public Classifier {
 public:
  explicit LinearSvm(std::uint64_t seed = 0, int epochs = 200, double learning_rate = 0.01,
                     double l2 = 1e-4)
      : seed_(seed), epochs_(epochs), lr_(learning_rate), l2_(l2) {}
  std::string name() const override { return "linear_svm"; }
  void fit(const TabularDataset& data) override;
  double score(const double* row) const override;
  int predict(const double* row) const override { return decision(row) >= 0.0 ? 1 : 0; }
  double decision(const double* row) const;
  nlohmann::json to_json() const override;
  static LinearSvm from_json(const nlohmann::json& j);

 private:
  std::uint64_t seed_;
  int epochs_;
  double lr_;
  double l2_;
  std::vector<double> mean_, scale_, w_;
  double b_ = 0.0;
};

inline const std::vector<std::string> kBaselineNames = {"knn", "naive_bayes", "decision_tree",
                                                        "adaboost", "linear_svm"};

// Throws ConfigError for unknown names.
std::unique_ptr<Classifier> make_classifier(const std::string& name, std::uint64_t seed);

}  // namespace pkgraph::baselines

#include <functional>
#include <set>

#include "pkgraph/baselines.hpp"

namespace pkgraph::baselines {
namespace {

using Getter = std::function<std::optional<std::string>(const AdmissionRecord&)>;

// Categorical columns in name order.
const std::vector<std::pair<std::string, Getter>>& categoricals() {
  static const std::vector<std::pair<std::string, Getter>> cols = {
      {"age_group", [](const AdmissionRecord& r) -> std::optional<std::string> {
         return age_bucket(r.age_years);
       }},
      {"employment", [](const AdmissionRecord& r) { return r.employment; }},
      {"ethnicity", [](const AdmissionRecord& r) { return r.ethnicity; }},
      {"gender", [](const AdmissionRecord& r) { return r.gender; }},
      {"household", [](const AdmissionRecord& r) { return r.household; }},
      {"housing", [](const AdmissionRecord& r) { return r.housing; }},
      {"marital_status", [](const AdmissionRecord& r) { return r.marital_status; }},
      {"religion", [](const AdmissionRecord& r) { return r.religion; }},
  };
  return cols;
}

std::vector<std::string> onehot_keys(const AdmissionRecord& r) {
  std::vector<std::string> keys;
  for (const auto& d : r.diagnoses) keys.push_back("diagnosis:" + d.code);
  for (const auto& m : r.medications) keys.push_back("medication:" + m);
  for (const auto& p : r.procedures) keys.push_back("procedure:" + p.code);
  return keys;
}

}  // namespace

TabularDataset TabularDataset::subset(const std::vector<std::size_t>& rows) const {
  TabularDataset out;
  out.columns = columns;
  out.n_rows = rows.size();
  out.values.reserve(rows.size() * n_cols());
  for (auto i : rows) {
    out.values.insert(out.values.end(), row(i), row(i) + n_cols());
    out.labels.push_back(labels[i]);
  }
  return out;
}

TabularEncoder TabularEncoder::fit(const std::vector<AdmissionRecord>& corpus) {
  TabularEncoder enc;
  std::set<std::string> keys;
  for (const auto& r : corpus)
    for (auto& k : onehot_keys(r)) keys.insert(std::move(k));
  // "diagnosis:" < "medication:" < "procedure:", so one sort yields the blocks.
  for (const auto& k : keys) {
    enc.onehot_[k] = enc.columns_.size();
    enc.columns_.push_back({k, Column::Kind::OneHot});
  }
  for (const auto& [name, get] : categoricals()) {
    std::set<std::string> values;
    for (const auto& r : corpus)
      if (auto v = get(r)) values.insert(*v);
    auto& lv = enc.levels_[name];
    int next = 1;
    for (const auto& v : values) lv[v] = next++;
    enc.columns_.push_back({name, Column::Kind::Ordinal});
  }
  return enc;
}

TabularDataset TabularEncoder::transform(const std::vector<AdmissionRecord>& records) const {
  TabularDataset ds;
  ds.columns = columns_;
  ds.n_rows = records.size();
  ds.values.assign(records.size() * columns_.size(), 0.0);
  const std::size_t first_cat = onehot_.size();
  for (std::size_t i = 0; i < records.size(); ++i) {
    double* row = ds.values.data() + i * columns_.size();
    for (const auto& k : onehot_keys(records[i]))
      if (auto it = onehot_.find(k); it != onehot_.end()) row[it->second] = 1.0;
    const auto& cats = categoricals();
    for (std::size_t c = 0; c < cats.size(); ++c) {
      const auto v = cats[c].second(records[i]);
      if (!v) continue;
      const auto& lv = levels_.at(cats[c].first);
      if (auto it = lv.find(*v); it != lv.end()) row[first_cat + c] = it->second;
    }
    const auto& label = records[i].readmitted_within_window;
    ds.labels.push_back(label ? (*label ? 1 : 0) : -1);
  }
  return ds;
}

TabularDataset encode_tabular(const std::vector<AdmissionRecord>& records) {
  return TabularEncoder::fit(records).transform(records);
}

}  // namespace pkgraph::baselines

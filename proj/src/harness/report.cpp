#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "pkgraph/error.hpp"
#include "pkgraph/harness.hpp"

namespace pkgraph::harness {
namespace {

constexpr const char* kHeader = "config,version,direction,split,fold,seed,accuracy,f1,runtime_s";

auto sort_key(const ExperimentResult& r) {
  return std::tie(r.config, r.version, r.direction, r.split, r.fold);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string mean_std(double mean, double sd) { return fixed(mean, 2) + " ± " + fixed(sd, 2); }

// Display width: counts UTF-8 code points.
std::size_t width(const std::string& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

std::string render(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w;
  for (const auto& row : rows) {
    w.resize(std::max(w.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) w[c] = std::max(w[c], width(row[c]));
  }
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::string line;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (c) line += "  ";
      line += rows[r][c] + std::string(w[c] - width(rows[r][c]), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
    if (r == 0) {
      std::size_t total = 0;
      for (auto x : w) total += x;
      out += std::string(total + 2 * (w.size() - 1), '-') + "\n";
    }
  }
  return out;
}

}  // namespace

std::vector<Aggregate> aggregate(const std::vector<ExperimentResult>& results) {
  std::map<std::tuple<std::string, std::string, std::string>, std::vector<ExperimentResult>> groups;
  for (const auto& r : results) groups[{r.config, r.version, r.direction}].push_back(r);
  std::vector<Aggregate> out;
  for (const auto& [key, rows] : groups)
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), summarize(rows)});
  return out;
}

void write_results_csv(std::ostream& out, std::vector<ExperimentResult> results,
                       bool record_runtime) {
  std::sort(results.begin(), results.end(),
            [](const auto& a, const auto& b) { return sort_key(a) < sort_key(b); });
  out << kHeader << '\n';
  for (const auto& r : results) {
    out << r.config << ',' << r.version << ',' << r.direction << ',' << r.split << ','
        << r.fold << ',' << r.seed << ',' << fixed(r.accuracy, 4) << ',' << fixed(r.f1, 4)
        << ',' << (record_runtime ? fixed(r.runtime_s, 3) : std::string("NA")) << '\n';
  }
}

std::vector<ExperimentResult> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw ParseError(1, "expected results header '" + std::string(kHeader) + "'");
  std::vector<ExperimentResult> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 9) throw ParseError(line_no, "expected 9 fields");
    try {
      ExperimentResult r;
      r.config = f[0];
      r.version = f[1];
      r.direction = f[2];
      r.split = std::stoi(f[3]);
      r.fold = std::stoi(f[4]);
      r.seed = std::stoull(f[5]);
      r.accuracy = std::stod(f[6]);
      r.f1 = std::stod(f[7]);
      r.runtime_s = f[8] == "NA" ? std::numeric_limits<double>::quiet_NaN() : std::stod(f[8]);
      out.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ParseError(line_no, "malformed number");
    }
  }
  return out;
}

std::string format_table(const std::vector<Aggregate>& rows) {
  std::vector<std::vector<std::string>> cells = {
      {"config", "version", "direction", "runs", "accuracy", "f1"}};
  for (const auto& a : rows)
    cells.push_back({a.config, a.version, a.direction, std::to_string(a.summary.runs),
                     mean_std(a.summary.accuracy_mean, a.summary.accuracy_std),
                     mean_std(a.summary.f1_mean, a.summary.f1_std)});
  return render(cells) + "mean ± sample std over all (split, fold) runs\n";
}

std::string format_ablation(const AblationTable& table) {
  std::vector<std::vector<std::string>> cells = {
      {"excluded", "accuracy", "f1", "d_accuracy", "d_f1"}};
  auto add = [&](const AblationRow& r, bool delta) {
    cells.push_back({r.excluded, mean_std(r.summary.accuracy_mean, r.summary.accuracy_std),
                     mean_std(r.summary.f1_mean, r.summary.f1_std),
                     delta ? fixed(r.accuracy_delta, 2) : "", delta ? fixed(r.f1_delta, 2) : ""});
  };
  add(table.baseline, false);
  for (const auto& r : table.rows) add(r, true);
  return render(cells);
}

}  // namespace pkgraph::harness

// Acceptance run: prints one PASS/FAIL line per criterion and exits nonzero if
// any criterion fails. Pass criterion numbers as arguments to run a subset.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pkgraph/baselines.hpp"
#include "pkgraph/cohort.hpp"
#include "pkgraph/graphx.hpp"
#include "pkgraph/harness.hpp"
#include "pkgraph/pipeline.hpp"
#include "pkgraph/pkg.hpp"
#include "pkgraph/preprocess.hpp"
#include "test_support.hpp"

namespace {

using namespace pkgraph;
namespace fs = std::filesystem;
using graphx::Direction;
using graphx::GraphVersion;
using graphx::Version;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(double v, int digits = 2) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

// Every architecture, variant and graph version, every parameter entry.
Verdict gradient_correctness() {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  double worst = 0.0;
  std::string where;
  std::size_t checked = 0, combos = 0;
  for (const auto& version : testing::all_versions()) {
    const auto sg = testing::random_small_graph(rng, version);
    const auto g = gnn::prepare(sg.graph);
    for (auto arch : {gnn::Arch::Sage, gnn::Arch::Gat}) {
      for (int variant : {1, 2}) {
        gnn::ModelSpec s;
        s.arch = arch;
        s.variant = variant;
        s.in_dim = sg.graph.vocab_size();
        s.n_relations = sg.graph.relations.size();
        const auto params = gnn::init_params(s, rng());
        const auto check = testing::finite_difference_check(params, g, sg.graph.label);
        checked += check.checked;
        ++combos;
        if (check.worst > worst) {
          worst = check.worst;
          where = params.tag() + " " + std::string(graphx::name(version.version)) + "-" +
                  std::string(graphx::name(version.direction)) + " " + check.tensor;
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-4 && elapsed < 120.0 && combos == 32,
          std::to_string(combos) + " combinations, " + std::to_string(checked) +
              " entries, worst relative error " + fmt(worst * 1e6, 3) + "e-6 at " + where +
              ", " + fmt(elapsed, 1) + " s"};
}

Verdict structural_exactness() {
  std::mt19937_64 rng(202);
  std::size_t failures = 0, graphs = 0;
  std::string first;
  auto fail = [&](const std::string& what) {
    if (failures++ == 0) first = what;
  };
  if (graphx::relation_set(Version::V1).size() != 8) fail("V1 relation count");
  if (graphx::relation_set(Version::V2).size() != 4) fail("V2 relation count");
  if (graphx::relation_set(Version::V3).size() != 1) fail("V3 relation count");
  for (int i = 0; i < 1000; ++i) {
    auto record = testing::random_record(rng, static_cast<int>(rng() % 16));
    record.admission_id = "A" + std::to_string(i);
    if (record.diagnoses.empty()) record.diagnoses.push_back({"428", "Heart failure"});
    const auto tg = pkg::build_pkg(record);
    const auto vocab = graphx::Vocabulary::build({tg});
    ++graphs;
    for (const auto& v : testing::all_versions()) {
      const auto g = graphx::to_numeric(tg, v, vocab, 0);
      const std::string tag = "graph " + std::to_string(i) + " " +
                              std::string(graphx::name(v.version)) + "-" +
                              std::string(graphx::name(v.direction));
      try {
        graphx::validate(g);
      } catch (const std::exception& e) {
        fail(tag + ": " + e.what());
      }
      if (g.relations != graphx::relation_set(v.version)) fail(tag + ": relation list");
      const auto groups = std::count(g.node_facets.begin(), g.node_facets.end(), hspo::Facet::Group);
      if (groups != (v.version == Version::V4 ? 7 : 0)) fail(tag + ": group node count");
      if (v.version != Version::V4 && v.direction == Direction::Directed) {
        for (const auto& e : g.edges)
          for (auto d : e.dst)
            if (d != g.patient_index) fail(tag + ": edge not into the patient");
      }
    }
  }
  return {failures == 0, std::to_string(graphs) + " graphs x 8 versions, " +
                             std::to_string(failures) + " violations" +
                             (first.empty() ? "" : " (first: " + first + ")")};
}

bool split_laws(std::size_t minority, std::size_t majority, std::string& note) {
  std::vector<int> labels(minority, 1);
  labels.insert(labels.end(), majority, 0);
  std::shuffle(labels.begin(), labels.end(), std::mt19937_64(minority));
  const auto splits = harness::balanced_splits(labels, 10, 0);
  std::vector<int> used(labels.size(), 0);
  std::set<std::size_t> sizes;
  bool ok = splits.size() == 10;
  for (const auto& s : splits) {
    sizes.insert(s.majority.size());
    std::size_t minority_seen = 0;
    for (auto i : s.members) minority_seen += labels[i] == 1;
    ok = ok && minority_seen == minority && s.members.size() == minority + s.majority.size();
    for (auto i : s.majority) {
      ok = ok && labels[i] == 0;
      ++used[i];
    }
  }
  for (std::size_t i = 0; i < labels.size(); ++i) ok = ok && used[i] == (labels[i] == 0 ? 1 : 0);
  ok = ok && *sizes.rbegin() - *sizes.begin() <= 1;
  note += " (" + std::to_string(minority) + "," + std::to_string(majority) + ")->" +
          std::to_string(minority) + "+";
  for (auto it = sizes.begin(); it != sizes.end(); ++it)
    note += (it == sizes.begin() ? "" : "/") + std::to_string(*it);
  return ok;
}

Verdict pipeline_laws() {
  std::mt19937_64 rng(303);
  auto digits = [&](int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += static_cast<char>('0' + rng() % 10);
    return s;
  };
  std::size_t bad_codes = 0;
  for (int i = 0; i < 10000; ++i) {
    const int kind = static_cast<int>(rng() % 3);
    std::string code = kind == 0   ? digits(3 + static_cast<int>(rng() % 2))
                       : kind == 1 ? "E" + digits(3 + static_cast<int>(rng() % 2))
                                   : "V" + digits(2 + static_cast<int>(rng() % 3));
    if (rng() % 2) code += "." + digits(1 + static_cast<int>(rng() % 3));
    const auto once = preprocess::group_icd_code(code);
    if (preprocess::group_icd_code(once) != once || code.rfind(once, 0) != 0) ++bad_codes;
  }

  std::size_t bad_graphs = 0;
  for (int i = 0; i < 500; ++i) {
    auto record = testing::random_record(rng, static_cast<int>(rng() % 16));
    record.admission_id = "A" + std::to_string(i);
    const auto text = pkg::serialize_ntriples(pkg::build_pkg(record));
    if (pkg::serialize_ntriples(pkg::parse_ntriples(text)) != text) ++bad_graphs;
  }

  std::string note;
  const bool splits = split_laws(50, 500, note) && split_laws(1428, 14113, note);
  return {bad_codes == 0 && bad_graphs == 0 && splits,
          "grouping failures " + std::to_string(bad_codes) + "/10000, N-Triples mismatches " +
              std::to_string(bad_graphs) + "/500, splits" + note};
}

// Planted-signal cohort shared by the learnability, direction and ablation runs.
struct PlantedCorpus {
  std::vector<AdmissionRecord> records;
  std::vector<pkg::TripleGraph> triples;
  graphx::Vocabulary vocab;
  std::vector<int> labels;
};

PlantedCorpus planted_corpus() {
  cohort::CohortConfig c;
  c.n_patients = 2600;
  c.seed = 11;
  cohort::PlantedSignal s;
  s.bias = -4.0;
  s.noise_std = 0.25;
  s.weights = {{"diagnosis:584", 6.0}, {"diagnosis:038", 6.0}, {"medication:vancomycin", 6.0}};
  c.planted_signal = s;
  PlantedCorpus out;
  out.records = preprocess::run(cohort::generate_cohort(c), {});
  if (out.records.size() > 2000) out.records.resize(2000);
  for (const auto& r : out.records) {
    out.triples.push_back(pkg::build_pkg(r));
    out.labels.push_back(*r.readmitted_within_window ? 1 : 0);
  }
  out.vocab = graphx::Vocabulary::build(out.triples);
  return out;
}

std::vector<graphx::NumericGraph> numeric_corpus(const PlantedCorpus& p, GraphVersion v) {
  std::vector<graphx::NumericGraph> out;
  for (std::size_t i = 0; i < p.triples.size(); ++i)
    out.push_back(graphx::to_numeric(p.triples[i], v, p.vocab, p.labels[i]));
  return out;
}

struct Learnability {
  Verdict c4, c5, c6;
};

Learnability learnability(bool want5, bool want6) {
  const auto corpus = planted_corpus();
  const std::size_t positives =
      static_cast<std::size_t>(std::count(corpus.labels.begin(), corpus.labels.end(), 1));
  harness::Protocol protocol;
  protocol.n_splits = 3;
  protocol.k_folds = 5;
  protocol.seed = 5;
  const gnn::TrainConfig train;
  auto gnn_accuracy = [&](const std::vector<graphx::NumericGraph>& graphs) {
    const auto rows = harness::run_protocol(
        corpus.labels, protocol, harness::gnn_trainer(graphs, train, gnn::Arch::Sage, 1), {});
    return harness::summarize(rows);
  };

  const auto start = Clock::now();
  const auto undirected_graphs = numeric_corpus(corpus, {Version::V3, Direction::Undirected});
  const auto undirected = gnn_accuracy(undirected_graphs);
  const auto table = baselines::encode_tabular(corpus.records);
  std::map<std::string, harness::Summary> base;
  for (const std::string name : {"naive_bayes", "knn"})
    base[name] = harness::summarize(harness::run_protocol(
        corpus.labels, protocol, harness::baseline_trainer(table, name), {}));
  const double elapsed = seconds_since(start);

  Learnability out;
  const double acc = undirected.accuracy_mean;
  out.c4.pass = acc >= 70.0 && acc >= base["naive_bayes"].accuracy_mean + 3.0 &&
                acc >= base["knn"].accuracy_mean + 3.0 && elapsed < 900.0;
  out.c4.detail = std::to_string(corpus.records.size()) + " admissions (" +
                  std::to_string(positives) + " positive), PKGSage-v1 v3-undirected " +
                  fmt(acc) + " ± " + fmt(undirected.accuracy_std) + ", naive_bayes " +
                  fmt(base["naive_bayes"].accuracy_mean) + ", knn " +
                  fmt(base["knn"].accuracy_mean) + ", " + fmt(elapsed, 0) + " s";

  if (want5) {
    const auto directed = gnn_accuracy(numeric_corpus(corpus, {Version::V3, Direction::Directed}));
    const double gap = acc - directed.accuracy_mean;
    out.c5 = {gap >= 5.0, "directed " + fmt(directed.accuracy_mean) + " vs undirected " +
                              fmt(acc) + ", gap " + fmt(gap) + " (needs >= 5)"};
  }
  if (want6) {
    auto ablated = [&](const std::set<std::string>& facets) {
      std::vector<graphx::NumericGraph> graphs;
      for (const auto& g : undirected_graphs) graphs.push_back(graphx::ablate(g, facets));
      return gnn_accuracy(graphs).accuracy_mean;
    };
    const double diseases = acc - ablated({"diseases"});
    const double social = acc - ablated({"social"});
    out.c6 = {diseases >= social + 2.0, "drop without diseases " + fmt(diseases) +
                                            ", without social " + fmt(social) +
                                            " (needs a margin >= 2)"};
  }
  return out;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(PKGRAPH_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Verdict determinism() {
  const auto root = fs::temp_directory_path() / "pkgraph_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  std::ofstream(root / "config.json") << R"({
    "cohort": {"n_patients": 300, "readmission_rate": 0.3},
    "train": {"epochs": 3, "hidden1": 8, "hidden2": 4},
    "protocol": {"n_splits": 2, "k_folds": 2},
    "experiments": {"archs": ["sage", "gat"], "variants": [1, 2]}
  })";
  const char* stages[] = {"generate", "preprocess", "build-graphs", "transform",
                          "train",    "evaluate",   "ablate",       "report"};
  std::vector<std::string> digests[2];
  for (int run = 0; run < 2; ++run) {
    const auto dir = root / ("run" + std::to_string(run));
    for (const char* stage : stages) {
      const std::string args = std::string(stage) + " --config " + (root / "config.json").string() +
                               " --seed 77 --out " + dir.string();
      if (const int code = run_cli(args); code != 0)
        return {false, std::string("stage ") + stage + " exited with " + std::to_string(code)};
    }
    for (const char* file : {"results.csv", "ablation.csv"})
      digests[run].push_back(pipeline::file_digest(dir / "results" / file));
  }
  fs::remove_all(root);
  return {digests[0] == digests[1], "results.csv " + digests[0][0] + " / " + digests[1][0] +
                                        ", ablation.csv " + digests[0][1] + " / " +
                                        digests[1][1]};
}

Verdict missingness_fidelity() {
  // Missing-record percentages of the processed admissions in the source table.
  const std::map<std::string, double> expected = {
      {"gender", 0.0},        {"religion", 34.69},  {"marital_status", 18.77},
      {"ethnicity", 9.23},    {"diagnoses", 0.02},  {"medication", 15.66},
      {"procedures", 11.74},  {"employment", 49.77}, {"housing", 96.96},
      {"household", 83.75}};
  cohort::CohortConfig c;
  c.n_patients = 10000;
  c.seed = 404;
  auto records = cohort::generate_cohort(c);
  records.resize(10000);
  std::map<std::string, std::size_t> missing;
  for (const auto& r : records) {
    missing["gender"] += !r.gender;
    missing["religion"] += !r.religion;
    missing["marital_status"] += !r.marital_status;
    missing["ethnicity"] += !r.ethnicity;
    missing["diagnoses"] += r.diagnoses.empty();
    missing["medication"] += r.medications.empty();
    missing["procedures"] += r.procedures.empty();
    missing["employment"] += !r.employment;
    missing["housing"] += !r.housing;
    missing["household"] += !r.household;
  }
  bool ok = missing["gender"] == 0;
  std::string detail;
  for (const auto& [facet, rate] : expected) {
    const double got = 100.0 * static_cast<double>(missing[facet]) / 10000.0;
    ok = ok && std::abs(got - rate) <= 1.5;
    detail += (detail.empty() ? "" : ", ") + facet + " " + fmt(got) + "/" + fmt(rate);
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  auto want = [&](int n) { return wanted.empty() || wanted.contains(n); };

  std::map<int, Verdict> verdicts;
  auto run = [&](int n, const std::function<Verdict()>& f) {
    if (!want(n)) return;
    try {
      verdicts[n] = f();
    } catch (const std::exception& e) {
      verdicts[n] = {false, std::string("threw: ") + e.what()};
    }
    std::cout << "criterion " << n << ": " << (verdicts[n].pass ? "PASS" : "FAIL") << "  "
              << verdicts[n].detail << std::endl;
  };

  run(1, gradient_correctness);
  run(2, structural_exactness);
  run(3, pipeline_laws);
  if (want(4) || want(5) || want(6)) {
    Learnability l;
    try {
      l = learnability(want(5), want(6));
    } catch (const std::exception& e) {
      l.c4 = l.c5 = l.c6 = {false, std::string("threw: ") + e.what()};
    }
    run(4, [&] { return l.c4; });
    run(5, [&] { return l.c5; });
    run(6, [&] { return l.c6; });
  }
  run(7, determinism);
  run(8, missingness_fidelity);

  int failed = 0;
  for (const auto& [_, v] : verdicts) failed += !v.pass;
  std::cout << verdicts.size() - static_cast<std::size_t>(failed) << "/" << verdicts.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}

#include "pkgraph/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "pkgraph/baselines.hpp"
#include "pkgraph/error.hpp"
#include "pkgraph/pkg.hpp"
#include "pkgraph/record_io.hpp"
#include "pkgraph/seed.hpp"

namespace pkgraph::pipeline {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Reads the keys of one JSON object and rejects any it did not consume.
class Section {
 public:
  Section(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + " must be an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    if (auto it = j_.find(key); it != j_.end()) {
      try {
        out = it->template get<T>();
      } catch (const json::exception&) {
        throw ConfigError(where_ + "." + key + " has the wrong type");
      }
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (const auto& [key, _] : j_.items())
      if (!seen_.contains(key)) throw ConfigError("unknown config key " + where_ + "." + key);
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

template <typename T, typename F>
std::vector<T> parse_names(const json* j, const std::string& where, F from_name) {
  std::vector<T> out;
  if (!j->is_array()) throw ConfigError(where + " must be a list");
  for (const auto& v : *j) {
    if (!v.is_string()) throw ConfigError(where + " entries must be strings");
    const auto parsed = from_name(v.get<std::string>());
    if (!parsed) throw ConfigError("unknown value '" + v.get<std::string>() + "' in " + where);
    out.push_back(*parsed);
  }
  return out;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void require(const fs::path& p, const char* stage) {
  if (!fs::exists(p))
    throw ValidationError("missing input " + p.string() + " (run `pkgraph " + stage +
                          "` first)");
}

void write_text(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + p.string());
  out << text;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Manifest: stage, seed, config hash and digests of inputs and outputs.
void write_manifest(const PipelineConfig& c, const std::string& stage,
                    const std::vector<fs::path>& inputs, const std::vector<fs::path>& outputs) {
  json m;
  m["stage"] = stage;
  m["seed"] = c.seed;
  m["config_hash"] = hex64(fnv1a64(config_to_json(c).dump()));
  auto digests = [&](const std::vector<fs::path>& paths) {
    json d = json::object();
    for (const auto& p : paths) {
      const auto rel = fs::relative(p, c.workdir).generic_string();
      if (fs::is_directory(p)) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(p))
          if (e.is_regular_file()) files.push_back(e.path());
        std::sort(files.begin(), files.end());
        std::uint64_t h = fnv1a64(rel);
        for (const auto& f : files)
          h = mix64(h ^ fnv1a64(f.filename().string() + ":" + file_digest(f)));
        d[rel] = hex64(h);
      } else if (fs::exists(p)) {
        d[rel] = file_digest(p);
      }
    }
    return d;
  };
  m["inputs"] = digests(inputs);
  m["outputs"] = digests(outputs);
  write_text(c.manifest_dir() / (stage + ".json"), m.dump(2) + "\n");
}

std::vector<AdmissionRecord> sorted_by_admission(std::vector<AdmissionRecord> records) {
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return a.admission_id < b.admission_id;
  });
  return records;
}

std::vector<graphx::GraphVersion> selected_versions(const PipelineConfig& c,
                                                    const StageOptions& o) {
  std::vector<graphx::GraphVersion> out;
  for (auto v : c.versions)
    for (auto d : c.directions) {
      if (o.version && *o.version != v) continue;
      if (o.direction && *o.direction != d) continue;
      out.push_back({v, d});
    }
  if (out.empty() && o.version && o.direction) out.push_back({*o.version, *o.direction});
  return out;
}

std::vector<graphx::NumericGraph> load_numeric(const PipelineConfig& c, graphx::GraphVersion v) {
  const auto p = c.numeric_dir() / numeric_file_name(v);
  require(p, "transform");
  return graphx::read_graphs(p);
}

std::string model_tag(gnn::Arch arch, int variant) {
  return std::string(arch == gnn::Arch::Sage ? "PKGSage" : "PKGA") + "-v" +
         std::to_string(variant);
}

}  // namespace

void PipelineConfig::validate() const {
  cohort.validate();
  preprocess.validate();
  train.validate();
  if (protocol.n_splits < 1) throw ConfigError("protocol.n_splits must be positive");
  if (protocol.k_folds < 2) throw ConfigError("protocol.k_folds must be at least 2");
  if (versions.empty() || directions.empty()) throw ConfigError("experiment matrix is empty");
  if (archs.empty() || variants.empty()) throw ConfigError("experiment matrix is empty");
  for (int v : variants)
    if (v != 1 && v != 2) throw ConfigError("variants must be 1 or 2");
  if (ablation.variant != 1 && ablation.variant != 2)
    throw ConfigError("ablation.variant must be 1 or 2");
  for (const auto& b : baselines) baselines::make_classifier(b, 0);
  if (workdir.empty()) throw ConfigError("workdir must not be empty");
}

void PipelineConfig::set_seed(std::uint64_t s) {
  seed = s;
  cohort.seed = derive_seed(s, "cohort");
  protocol.seed = derive_seed(s, "protocol");
  train.seed = derive_seed(s, "train");
}

PipelineConfig config_from_json(const json& j) {
  PipelineConfig c;
  Section top(j, "config");
  std::string workdir = c.workdir.string();
  top.read("workdir", workdir);
  c.workdir = workdir;
  std::uint64_t seed = 0;
  top.read("seed", seed);
  c.set_seed(seed);
  top.read("record_runtime", c.record_runtime);

  if (const json* s = top.child("cohort")) {
    Section sec(*s, "cohort");
    sec.read("n_patients", c.cohort.n_patients);
    sec.read("max_admissions_per_patient", c.cohort.max_admissions_per_patient);
    sec.read("readmission_rate", c.cohort.readmission_rate);
    sec.read("later_admission_rate", c.cohort.later_admission_rate);
    sec.read("deceased_rate", c.cohort.deceased_rate);
    if (const json* m = sec.child("missingness")) {
      if (m->is_string() && m->get<std::string>() == "none") {
        c.cohort.missingness = cohort::MissingnessProfile::none();
      } else {
        Section ms(*m, "cohort.missingness");
        for (const auto& facet : cohort::MissingnessProfile::facet_names())
          ms.read(facet.c_str(), c.cohort.missingness.rates[facet]);
        ms.finish();
      }
    }
    if (const json* p = sec.child("planted_signal")) {
      Section ps(*p, "cohort.planted_signal");
      cohort::PlantedSignal sig;
      ps.read("weights", sig.weights);
      ps.read("bias", sig.bias);
      ps.read("noise_std", sig.noise_std);
      ps.finish();
      c.cohort.planted_signal = sig;
    }
    sec.finish();
  }
  if (const json* s = top.child("preprocess")) {
    Section sec(*s, "preprocess");
    sec.read("window_days", c.preprocess.window_days);
    sec.read("cohort_codes", c.preprocess.cohort_codes);
    sec.read("filter_cohort", c.preprocess.filter_cohort);
    sec.finish();
  }
  if (const json* s = top.child("train")) {
    Section sec(*s, "train");
    sec.read("learning_rate", c.train.learning_rate);
    sec.read("epochs", c.train.epochs);
    sec.read("batch_size", c.train.batch_size);
    sec.read("n_bases", c.train.n_bases);
    sec.read("validation_fraction", c.train.validation_fraction);
    sec.read("hidden1", c.train.hidden1);
    sec.read("hidden2", c.train.hidden2);
    sec.finish();
  }
  if (const json* s = top.child("protocol")) {
    Section sec(*s, "protocol");
    sec.read("n_splits", c.protocol.n_splits);
    sec.read("k_folds", c.protocol.k_folds);
    sec.finish();
  }
  if (const json* s = top.child("experiments")) {
    Section sec(*s, "experiments");
    if (const json* v = sec.child("versions"))
      c.versions = parse_names<graphx::Version>(v, "experiments.versions",
                                                graphx::version_from_name);
    if (const json* v = sec.child("directions"))
      c.directions = parse_names<graphx::Direction>(v, "experiments.directions",
                                                    graphx::direction_from_name);
    if (const json* v = sec.child("archs"))
      c.archs = parse_names<gnn::Arch>(v, "experiments.archs", gnn::arch_from_name);
    sec.read("variants", c.variants);
    sec.read("baselines", c.baselines);
    sec.finish();
  }
  if (const json* s = top.child("ablation")) {
    Section sec(*s, "ablation");
    std::string arch = std::string(gnn::name(c.ablation.arch));
    std::string version = std::string(graphx::name(c.ablation.version.version));
    std::string direction = std::string(graphx::name(c.ablation.version.direction));
    sec.read("arch", arch);
    sec.read("variant", c.ablation.variant);
    sec.read("version", version);
    sec.read("direction", direction);
    sec.finish();
    const auto a = gnn::arch_from_name(arch);
    const auto v = graphx::version_from_name(version);
    const auto d = graphx::direction_from_name(direction);
    if (!a || !v || !d) throw ConfigError("bad ablation setup");
    c.ablation.arch = *a;
    c.ablation.version = {*v, *d};
  }
  top.finish();
  c.validate();
  return c;
}

json config_to_json(const PipelineConfig& c) {
  json j;
  j["workdir"] = c.workdir.generic_string();
  j["seed"] = c.seed;
  j["record_runtime"] = c.record_runtime;
  json co;
  co["n_patients"] = c.cohort.n_patients;
  co["max_admissions_per_patient"] = c.cohort.max_admissions_per_patient;
  co["readmission_rate"] = c.cohort.readmission_rate;
  co["later_admission_rate"] = c.cohort.later_admission_rate;
  co["deceased_rate"] = c.cohort.deceased_rate;
  co["missingness"] = c.cohort.missingness.rates;
  if (c.cohort.planted_signal)
    co["planted_signal"] = {{"weights", c.cohort.planted_signal->weights},
                            {"bias", c.cohort.planted_signal->bias},
                            {"noise_std", c.cohort.planted_signal->noise_std}};
  j["cohort"] = co;
  j["preprocess"] = {{"window_days", c.preprocess.window_days},
                     {"cohort_codes", c.preprocess.cohort_codes},
                     {"filter_cohort", c.preprocess.filter_cohort}};
  j["train"] = {{"learning_rate", c.train.learning_rate},
                {"epochs", c.train.epochs},
                {"batch_size", c.train.batch_size},
                {"n_bases", c.train.n_bases},
                {"validation_fraction", c.train.validation_fraction},
                {"hidden1", c.train.hidden1},
                {"hidden2", c.train.hidden2}};
  j["protocol"] = {{"n_splits", c.protocol.n_splits}, {"k_folds", c.protocol.k_folds}};
  json ex;
  for (auto v : c.versions) ex["versions"].push_back(graphx::name(v));
  for (auto d : c.directions) ex["directions"].push_back(graphx::name(d));
  for (auto a : c.archs) ex["archs"].push_back(gnn::name(a));
  ex["variants"] = c.variants;
  ex["baselines"] = c.baselines;
  j["experiments"] = ex;
  j["ablation"] = {{"arch", gnn::name(c.ablation.arch)},
                   {"variant", c.ablation.variant},
                   {"version", graphx::name(c.ablation.version.version)},
                   {"direction", graphx::name(c.ablation.version.direction)}};
  return j;
}

PipelineConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

std::string file_digest(const fs::path& path) { return hex64(fnv1a64(read_text(path))); }

std::string numeric_file_name(graphx::GraphVersion v) {
  return std::string(graphx::name(v.version)) + "-" + std::string(graphx::name(v.direction)) +
         ".pkgg";
}

void run_generate(const PipelineConfig& c) {
  fs::create_directories(c.workdir);
  write_records(c.cohort_file(), cohort::generate_cohort(c.cohort));
  write_manifest(c, "generate", {}, {c.cohort_file()});
}

void run_preprocess(const PipelineConfig& c) {
  require(c.cohort_file(), "generate");
  auto records = preprocess::run(read_records(c.cohort_file()), c.preprocess);
  write_records(c.processed_file(), records);
  const auto summary_path = c.workdir / "summary.txt";
  write_text(summary_path, preprocess::format_summary(preprocess::summarize(records)));
  write_manifest(c, "preprocess", {c.cohort_file()}, {c.processed_file(), summary_path});
}

void run_build_graphs(const PipelineConfig& c) {
  require(c.processed_file(), "preprocess");
  const auto records = sorted_by_admission(read_records(c.processed_file()));
  if (records.empty()) throw ValidationError("no admissions left after preprocessing");
  const auto dir = c.graph_dir();
  if (fs::exists(dir)) fs::remove_all(dir);
  fs::create_directories(dir);
  std::string labels = "admission_id,label\n";
  for (const auto& r : records) {
    write_text(dir / (r.admission_id + ".nt"), pkg::serialize_ntriples(pkg::build_pkg(r)));
    labels += r.admission_id + "," + (*r.readmitted_within_window ? "1" : "0") + "\n";
  }
  write_text(dir / "labels.csv", labels);
  write_manifest(c, "build-graphs", {c.processed_file()}, {dir});
}

void run_transform(const PipelineConfig& c, const StageOptions& o) {
  const auto dir = c.graph_dir();
  require(dir / "labels.csv", "build-graphs");
  std::map<std::string, int> labels;
  {
    std::istringstream in(read_text(dir / "labels.csv"));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      const auto comma = line.find(',');
      if (comma == std::string::npos) continue;
      labels[line.substr(0, comma)] = line.substr(comma + 1) == "1" ? 1 : 0;
    }
  }
  std::vector<pkg::TripleGraph> corpus;
  std::vector<int> corpus_labels;
  for (const auto& [id, label] : labels) {
    const auto p = dir / (id + ".nt");
    require(p, "build-graphs");
    corpus.push_back(pkg::parse_ntriples(read_text(p)));
    corpus_labels.push_back(label);
  }
  const auto vocab = graphx::Vocabulary::build(corpus);
  fs::create_directories(c.numeric_dir());
  const auto vocab_path = c.numeric_dir() / "vocabulary.txt";
  graphx::write_vocabulary(vocab_path, vocab);

  std::vector<fs::path> outputs = {vocab_path};
  for (const auto& v : selected_versions(c, o)) {
    std::vector<graphx::NumericGraph> graphs;
    std::size_t oov = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i)
      graphs.push_back(graphx::to_numeric(corpus[i], v, vocab, corpus_labels[i], &oov));
    if (oov) std::cerr << "warning: " << oov << " out-of-vocabulary tokens dropped\n";
    const auto p = c.numeric_dir() / numeric_file_name(v);
    graphx::write_graphs(p, graphs);
    outputs.push_back(p);
  }
  write_manifest(c, "transform", {dir}, outputs);
}

void run_train(const PipelineConfig& c, const StageOptions& o) {
  const graphx::GraphVersion v{o.version.value_or(c.versions.front()),
                               o.direction.value_or(c.directions.front())};
  const auto arch = o.arch.value_or(c.archs.front());
  const int variant = o.variant.value_or(c.variants.front());
  const auto input = c.numeric_dir() / numeric_file_name(v);
  const auto graphs = load_numeric(c, v);
  const auto result = gnn::train(graphs, c.train, arch, variant);

  fs::create_directories(c.model_dir());
  const std::string stem = model_tag(arch, variant) + "-" + std::string(graphx::name(v.version)) +
                           "-" + std::string(graphx::name(v.direction));
  const auto ckpt = c.model_dir() / (stem + ".ckpt");
  const auto hist = c.model_dir() / (stem + ".history.csv");
  gnn::save_checkpoint(ckpt, result.params);
  std::ostringstream h;
  gnn::write_history(h, result.history);
  write_text(hist, h.str());
  std::cerr << stem << ": " << result.params.parameter_count() << " parameters, best epoch "
            << result.best_epoch << "\n";
  write_manifest(c, "train-" + stem, {input}, {ckpt, hist});
}

void run_evaluate(const PipelineConfig& c, const StageOptions& o) {
  require(c.processed_file(), "preprocess");
  std::vector<harness::ExperimentResult> results;
  std::vector<fs::path> inputs = {c.processed_file()};
  std::vector<int> labels;

  for (const auto& v : selected_versions(c, o)) {
    inputs.push_back(c.numeric_dir() / numeric_file_name(v));
    const auto graphs = load_numeric(c, v);
    labels = harness::labels_of(graphs);
    for (auto arch : c.archs) {
      if (o.arch && *o.arch != arch) continue;
      for (int variant : c.variants) {
        if (o.variant && *o.variant != variant) continue;
        harness::ExperimentResult base;
        base.config = model_tag(arch, variant);
        base.version = graphx::name(v.version);
        base.direction = graphx::name(v.direction);
        auto rows = harness::run_protocol(labels, c.protocol,
                                          harness::gnn_trainer(graphs, c.train, arch, variant),
                                          base);
        results.insert(results.end(), rows.begin(), rows.end());
      }
    }
  }

  const auto records = sorted_by_admission(read_records(c.processed_file()));
  const auto table = baselines::encode_tabular(records);
  if (!labels.empty() && labels != table.labels)
    throw ValidationError("graph corpus and processed records disagree; rerun build-graphs");
  for (const auto& name : c.baselines) {
    harness::ExperimentResult base;
    base.config = name;
    base.version = "tabular";
    base.direction = "na";
    auto rows =
        harness::run_protocol(table.labels, c.protocol, harness::baseline_trainer(table, name), base);
    results.insert(results.end(), rows.begin(), rows.end());
  }

  fs::create_directories(c.results_dir());
  const auto csv = c.results_dir() / "results.csv";
  std::ostringstream out;
  harness::write_results_csv(out, results, c.record_runtime);
  write_text(csv, out.str());
  std::vector<fs::path> outputs = {csv};
  if (!c.record_runtime) {
    // Wall-clock times vary between runs; keep them out of the canonical CSV.
    std::ostringstream timings;
    harness::write_results_csv(timings, results, true);
    const auto sidecar = c.results_dir() / "runtime.csv";
    write_text(sidecar, timings.str());
  }
  write_manifest(c, "evaluate", inputs, outputs);
}

void run_ablate(const PipelineConfig& c, const StageOptions& o) {
  const graphx::GraphVersion v{o.version.value_or(c.ablation.version.version),
                               o.direction.value_or(c.ablation.version.direction)};
  const auto arch = o.arch.value_or(c.ablation.arch);
  const int variant = o.variant.value_or(c.ablation.variant);
  const auto graphs = load_numeric(c, v);
  const auto table = harness::ablation_suite(graphs, harness::ablation_sets(), c.protocol,
                                             c.train, arch, variant);
  fs::create_directories(c.results_dir());
  std::ostringstream csv;
  harness::write_results_csv(csv, table.results, c.record_runtime);
  write_text(c.results_dir() / "ablation.csv", csv.str());
  write_text(c.results_dir() / "ablation.txt", harness::format_ablation(table));
  write_manifest(c, "ablate", {c.numeric_dir() / numeric_file_name(v)},
                 {c.results_dir() / "ablation.csv", c.results_dir() / "ablation.txt"});
}

std::string run_report(const PipelineConfig& c) {
  const auto csv = c.results_dir() / "results.csv";
  require(csv, "evaluate");
  std::istringstream in(read_text(csv));
  std::string text = harness::format_table(harness::aggregate(harness::read_results_csv(in)));
  const auto ablation = c.results_dir() / "ablation.txt";
  if (fs::exists(ablation)) text += "\nfacet ablation\n" + read_text(ablation);
  write_text(c.results_dir() / "report.txt", text);
  write_manifest(c, "report", {csv}, {c.results_dir() / "report.txt"});
  return text;
}

}  // namespace pkgraph::pipeline

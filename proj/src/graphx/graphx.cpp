#include "pkgraph/graphx.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "pkgraph/error.hpp"

namespace pkgraph::graphx {
namespace {

using hspo::Facet;
using hspo::Relation;

// V4 group nodes: descriptor text and the group each sits under.
enum class Group : std::uint8_t {
  Diseases,
  SocialContext,
  Demographics,
  Age,
  Interventions,
  Procedures,
  Medication,
};

constexpr std::array<Group, 7> kGroups = {Group::Diseases,     Group::SocialContext,
                                          Group::Demographics, Group::Age,
                                          Group::Interventions, Group::Procedures,
                                          Group::Medication};

std::string_view descriptor(Group g) {
  switch (g) {
    case Group::Diseases: return "diseases";
    case Group::SocialContext: return "social context";
    case Group::Demographics: return "demographics";
    case Group::Age: return "age";
    case Group::Interventions: return "interventions";
    case Group::Procedures: return "procedures";
    case Group::Medication: return "medication";
  }
  return "";
}

// Parent of a group node; nullopt means the patient.
std::optional<Group> parent(Group g) {
  switch (g) {
    case Group::Age: return Group::Demographics;
    case Group::Procedures:
    case Group::Medication: return Group::Interventions;
    default: return std::nullopt;
  }
}

Group group_of(Facet f) {
  switch (f) {
    case Facet::Disease: return Group::Diseases;
    case Facet::Medication: return Group::Medication;
    case Facet::Procedure: return Group::Procedures;
    case Facet::Social: return Group::SocialContext;
    case Facet::Age: return Group::Age;
    default: return Group::Demographics;
  }
}

Relation leaf_relation(Version v, Facet f) {
  switch (v) {
    case Version::V2:
      return hspo::is_demographic(f) ? Relation::HasDemographics : hspo::facet_relation(f);
    case Version::V3: return Relation::Has;
    case Version::V1:
    case Version::V4: break;
  }
  return hspo::facet_relation(f);
}

bool in_group(Facet f, const std::set<std::string>& facets) {
  switch (f) {
    case Facet::Disease: return facets.contains("diseases");
    case Facet::Medication: return facets.contains("medication");
    case Facet::Procedure: return facets.contains("procedures");
    case Facet::Social: return facets.contains("social");
    default: return hspo::is_demographic(f) && facets.contains("demographics");
  }
}

}  // namespace

std::string_view name(Version v) {
  switch (v) {
    case Version::V1: return "v1";
    case Version::V2: return "v2";
    case Version::V3: return "v3";
    case Version::V4: return "v4";
  }
  return "unknown";
}

std::string_view name(Direction d) {
  return d == Direction::Directed ? "directed" : "undirected";
}

std::optional<Version> version_from_name(std::string_view n) {
  for (Version v : {Version::V1, Version::V2, Version::V3, Version::V4})
    if (name(v) == n) return v;
  return std::nullopt;
}

std::optional<Direction> direction_from_name(std::string_view n) {
  for (Direction d : {Direction::Directed, Direction::Undirected})
    if (name(d) == n) return d;
  return std::nullopt;
}

std::vector<Relation> relation_set(Version v) {
  const std::vector<Relation> facet(hspo::kFacetRelations.begin(), hspo::kFacetRelations.end());
  switch (v) {
    case Version::V1: return facet;
    case Version::V2:
      return {Relation::HasDisease, Relation::HasIntervention, Relation::HasSocialContext,
              Relation::HasDemographics};
    case Version::V3: return {Relation::Has};
    case Version::V4: {
      std::vector<Relation> out = {Relation::Has};
      out.insert(out.end(), facet.begin(), facet.end());
      return out;
    }
  }
  throw ContractError("unknown graph version");
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isalnum(c) && c < 0x80) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

const std::vector<std::string>& descriptor_words() {
  static const std::vector<std::string> words = {
      "age", "context", "demographics", "diseases", "interventions",
      "medication", "patient", "procedures", "social"};
  return words;
}

Vocabulary::Vocabulary(std::vector<std::string> tokens) {
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  tokens_ = std::move(tokens);
  for (std::size_t i = 0; i < tokens_.size(); ++i) index_.emplace(tokens_[i], i);
}

Vocabulary Vocabulary::build(const std::vector<pkg::TripleGraph>& corpus) {
  if (corpus.empty()) throw ValidationError("cannot build a vocabulary from an empty corpus");
  std::set<std::string> tokens(descriptor_words().begin(), descriptor_words().end());
  for (const auto& g : corpus)
    for (const auto& [_, meta] : g.node_meta)
      for (auto& t : tokenize(meta.description)) tokens.insert(std::move(t));
  return Vocabulary({tokens.begin(), tokens.end()});
}

std::optional<std::size_t> Vocabulary::index(std::string_view token) const {
  if (auto it = index_.find(token); it != index_.end()) return it->second;
  return std::nullopt;
}

std::vector<std::uint32_t> bow_features(std::string_view description, const Vocabulary& vocab,
                                        std::size_t* oov) {
  std::vector<std::uint32_t> counts(vocab.size(), 0);
  for (const auto& t : tokenize(description)) {
    if (auto i = vocab.index(t)) {
      ++counts[*i];
    } else if (oov) {
      ++*oov;
    }
  }
  return counts;
}

void SparseCounts::append_row(const std::vector<std::uint32_t>& dense) {
  if (dense.size() != n_cols) throw ContractError("feature row width mismatch");
  for (std::size_t c = 0; c < dense.size(); ++c) {
    if (dense[c] == 0) continue;
    cols.push_back(static_cast<std::uint32_t>(c));
    values.push_back(dense[c]);
  }
  row_ptr.push_back(static_cast<std::uint32_t>(cols.size()));
}

std::vector<std::uint32_t> SparseCounts::dense_row(std::size_t r) const {
  std::vector<std::uint32_t> out(n_cols, 0);
  for (auto k = row_ptr[r]; k < row_ptr[r + 1]; ++k) out[cols[k]] = values[k];
  return out;
}

std::size_t NumericGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& e : edges) n += e.size();
  return n;
}

void validate(const NumericGraph& g) {
  auto fail = [&](const std::string& what) {
    throw ValidationError("graph " + g.id + ": " + what);
  };
  if (g.n_nodes == 0) fail("no nodes");
  if (g.relations != relation_set(g.version.version)) fail("relation list does not match version");
  if (g.edges.size() != g.relations.size()) fail("edge lists do not match relations");
  if (g.features.n_rows() != g.n_nodes) fail("feature rows do not match node count");
  if (g.node_facets.size() != g.n_nodes) fail("facet list does not match node count");
  if (g.patient_index >= g.n_nodes) fail("patient index out of range");
  if (g.node_facets[g.patient_index] != Facet::Patient) fail("patient index is not the patient");
  if (g.label != 0 && g.label != 1) fail("label must be 0 or 1");
  const auto& rp = g.features.row_ptr;
  if (!std::is_sorted(rp.begin(), rp.end()) || rp.back() != g.features.cols.size() ||
      g.features.cols.size() != g.features.values.size())
    fail("malformed feature matrix");
  for (auto c : g.features.cols)
    if (c >= g.features.n_cols) fail("feature column out of range");
  for (const auto& e : g.edges) {
    if (e.src.size() != e.dst.size()) fail("ragged edge list");
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e.src[i] >= g.n_nodes || e.dst[i] >= g.n_nodes) fail("edge endpoint out of range");
    if (g.version.direction == Direction::Undirected) {
      std::multiset<std::pair<std::uint32_t, std::uint32_t>> fwd, rev;
      for (std::size_t i = 0; i < e.size(); ++i) {
        fwd.insert({e.src[i], e.dst[i]});
        rev.insert({e.dst[i], e.src[i]});
      }
      if (fwd != rev) fail("undirected edge list is not symmetric");
    }
  }
}

NumericGraph to_numeric(const pkg::TripleGraph& graph, GraphVersion version,
                        const Vocabulary& vocab, int label, std::size_t* oov) {
  NumericGraph g;
  g.version = version;
  g.relations = relation_set(version.version);
  g.edges.resize(g.relations.size());
  g.features.n_cols = vocab.size();
  g.label = label;
  g.id = graph.patient_node.substr(graph.patient_node.rfind('/') + 1);

  std::map<std::string, std::uint32_t> index;
  auto add_node = [&](Facet facet, std::string_view description) {
    g.features.append_row(bow_features(description, vocab, oov));
    g.node_facets.push_back(facet);
    return static_cast<std::uint32_t>(g.n_nodes++);
  };
  auto rel_slot = [&](Relation r) {
    const auto it = std::find(g.relations.begin(), g.relations.end(), r);
    return static_cast<std::size_t>(it - g.relations.begin());
  };
  auto connect = [&](std::uint32_t child, std::uint32_t parent_node, Relation r) {
    auto& e = g.edges[rel_slot(r)];
    e.src.push_back(child);
    e.dst.push_back(parent_node);
    if (version.direction == Direction::Undirected) {
      e.src.push_back(parent_node);
      e.dst.push_back(child);
    }
  };

  const auto pmeta = graph.node_meta.find(graph.patient_node);
  if (pmeta == graph.node_meta.end()) throw ContractError("graph has no patient node");
  g.patient_index = add_node(Facet::Patient, pmeta->second.description);
  for (const auto& [iri, meta] : graph.node_meta)
    if (iri != graph.patient_node) index[iri] = add_node(meta.facet, meta.description);

  std::array<std::uint32_t, kGroups.size()> group_index{};
  if (version.version == Version::V4) {
    for (std::size_t k = 0; k < kGroups.size(); ++k)
      group_index[k] = add_node(Facet::Group, descriptor(kGroups[k]));
    for (std::size_t k = 0; k < kGroups.size(); ++k) {
      const auto p = parent(kGroups[k]);
      connect(group_index[k], p ? group_index[static_cast<std::size_t>(*p)] : g.patient_index,
              Relation::Has);
    }
  }

  for (const auto& t : graph.triples) {
    if (!t.object.is_iri() || t.subject != graph.patient_node) continue;
    const auto it = index.find(t.object.value);
    if (it == index.end()) throw ContractError("triple object without node metadata");
    const Facet facet = g.node_facets[it->second];
    if (version.version == Version::V4) {
      connect(it->second, group_index[static_cast<std::size_t>(group_of(facet))],
              hspo::facet_relation(facet));
    } else {
      connect(it->second, g.patient_index, leaf_relation(version.version, facet));
    }
  }
  return g;
}

NumericGraph ablate(const NumericGraph& graph, const std::set<std::string>& facets) {
  for (const auto& f : facets) {
    if (f == "patient") throw ValidationError("the patient node cannot be ablated");
    if (!kAblationFacets.contains(f)) throw ValidationError("unknown ablation facet '" + f + "'");
  }
  NumericGraph out;
  out.id = graph.id;
  out.version = graph.version;
  out.relations = graph.relations;
  out.edges.resize(graph.edges.size());
  out.features.n_cols = graph.features.n_cols;
  out.label = graph.label;

  constexpr auto kDropped = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> remap(graph.n_nodes, kDropped);
  for (std::size_t v = 0; v < graph.n_nodes; ++v) {
    if (in_group(graph.node_facets[v], facets)) continue;
    remap[v] = static_cast<std::uint32_t>(out.n_nodes++);
    out.node_facets.push_back(graph.node_facets[v]);
    const auto b = graph.features.row_ptr[v], e = graph.features.row_ptr[v + 1];
    out.features.cols.insert(out.features.cols.end(), graph.features.cols.begin() + b,
                             graph.features.cols.begin() + e);
    out.features.values.insert(out.features.values.end(), graph.features.values.begin() + b,
                               graph.features.values.begin() + e);
    out.features.row_ptr.push_back(static_cast<std::uint32_t>(out.features.cols.size()));
  }
  out.patient_index = remap[graph.patient_index];
  for (std::size_t r = 0; r < graph.edges.size(); ++r) {
    const auto& e = graph.edges[r];
    for (std::size_t i = 0; i < e.size(); ++i) {
      const auto s = remap[e.src[i]], d = remap[e.dst[i]];
      if (s == kDropped || d == kDropped) continue;
      out.edges[r].src.push_back(s);
      out.edges[r].dst.push_back(d);
    }
  }
  return out;
}

}  // namespace pkgraph::graphx

#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pkgraph/hspo.hpp"
#include "pkgraph/record.hpp"

namespace pkgraph::pkg {

struct Term {
  enum class Kind : std::uint8_t { Iri, Literal };
  Kind kind = Kind::Iri;
  std::string value;
  std::string datatype;  // literals only; empty for plain literals

  static Term iri(std::string v) { return {Kind::Iri, std::move(v), {}}; }
  static Term literal(std::string v, std::string dt = {}) {
    return {Kind::Literal, std::move(v), std::move(dt)};
  }
  bool is_iri() const { return kind == Kind::Iri; }

  auto operator<=>(const Term&) const = default;
};

struct Triple {
  std::string subject;
  std::string predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
};

struct NodeMeta {
  hspo::Facet facet;
  std::string description;

  bool operator==(const NodeMeta&) const = default;
};

// Star-shaped person-centric graph of one admission. `triples` is kept sorted
// and duplicate-free by the builders in this module.
struct TripleGraph {
  std::string patient_node;
  std::vector<Triple> triples;
  std::map<std::string, NodeMeta> node_meta;

  bool operator==(const TripleGraph&) const = default;
};

// Node IRIs embed the facet and the percent-encoded description, so that node
// metadata can be recovered from the IRI alone:
//   <resource>patient/<admission_id>
//   <resource>disease/<family>/<description>      procedure/<family>/<description>
//   <resource>social/<aspect>/<description>       <facet>/<description>
std::string node_iri(const hspo::HspoSchema& schema, hspo::Facet facet,
                     std::string_view description, std::string_view qualifier = {});
std::optional<NodeMeta> meta_from_iri(const hspo::HspoSchema& schema,
                                      std::string_view iri);

// Reversible local-name encoding: unreserved characters kept, space -> '_',
// everything else %XX.
std::string encode_local_name(std::string_view text);
std::string decode_local_name(std::string_view text);

// Requires a labeled record (ContractError otherwise).
TripleGraph build_pkg(const AdmissionRecord& record, const hspo::HspoSchema& schema = {});

// Exactly one patient node and every other node one hop from it.
bool is_star(const TripleGraph& graph);

struct TriplePattern {
  std::optional<std::string> subject;
  std::optional<std::string> predicate;
  std::optional<Term> object;
};

// Single triple-pattern match; unset positions are wildcards. Sorted result.
std::vector<Triple> query(const TripleGraph& graph, const TriplePattern& pattern);

// Canonical N-Triples: one sorted line per triple.
std::string serialize_ntriples(const TripleGraph& graph,
                               const hspo::HspoSchema& schema = {});
TripleGraph parse_ntriples(std::string_view text, const hspo::HspoSchema& schema = {});

}  // namespace pkgraph::pkg

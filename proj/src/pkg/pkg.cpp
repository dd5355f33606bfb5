#include "pkgraph/pkg.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "pkgraph/error.hpp"

namespace pkgraph::pkg {
namespace {

using hspo::Facet;
using hspo::Relation;

bool unreserved(unsigned char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '-' || c == '.' || c == '~';
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

bool matches(const Triple& t, const TriplePattern& p) {
  return (!p.subject || t.subject == *p.subject) &&
         (!p.predicate || t.predicate == *p.predicate) &&
         (!p.object || t.object == *p.object);
}

}  // namespace

std::string encode_local_name(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (unsigned char c : text) {
    if (unreserved(c)) {
      out.push_back(static_cast<char>(c));
    } else if (c == ' ') {
      out.push_back('_');
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", c);
      out += buf;
    }
  }
  return out;
}

std::string decode_local_name(std::string_view text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '_') {
      out.push_back(' ');
    } else if (c == '%') {
      if (i + 2 >= text.size()) throw ValidationError("truncated percent escape in IRI");
      const int hi = hex_value(text[i + 1]);
      const int lo = hex_value(text[i + 2]);
      if (hi < 0 || lo < 0) throw ValidationError("bad percent escape in IRI");
      out.push_back(static_cast<char>(hi * 16 + lo));
      i += 2;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string node_iri(const hspo::HspoSchema& schema, Facet facet,
                     std::string_view description, std::string_view qualifier) {
  std::string iri = schema.resource + std::string(hspo::name(facet)) + "/";
  if (!qualifier.empty()) iri += encode_local_name(qualifier) + "/";
  return iri + encode_local_name(description);
}

std::optional<NodeMeta> meta_from_iri(const hspo::HspoSchema& schema,
                                      std::string_view iri) {
  if (!iri.starts_with(schema.resource)) return std::nullopt;
  const std::string_view rest = iri.substr(schema.resource.size());
  const auto slash = rest.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  const auto facet = hspo::facet_from_name(rest.substr(0, slash));
  if (!facet) return std::nullopt;
  const auto last = rest.rfind('/');
  const std::string_view local = rest.substr(last + 1);
  if (local.empty()) return std::nullopt;
  if (*facet == Facet::Patient) return NodeMeta{*facet, "patient"};
  try {
    return NodeMeta{*facet, decode_local_name(local)};
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

TripleGraph build_pkg(const AdmissionRecord& record, const hspo::HspoSchema& schema) {
  if (!record.readmitted_within_window)
    throw ContractError("admission " + record.admission_id + " has no label");

  TripleGraph g;
  g.patient_node = node_iri(schema, Facet::Patient, record.admission_id);
  g.node_meta[g.patient_node] = {Facet::Patient, "patient"};

  std::set<Triple> triples;
  auto link = [&](Relation rel, Facet facet, const std::string& description,
                  std::string_view qualifier = {}) {
    const std::string node = node_iri(schema, facet, description, qualifier);
    g.node_meta.emplace(node, NodeMeta{facet, description});
    triples.insert({g.patient_node, schema.predicate(rel), Term::iri(node)});
    return node;
  };

  for (const auto& d : record.diagnoses)
    link(Relation::HasDisease, Facet::Disease, d.description, d.code);
  for (const auto& p : record.procedures)
    link(Relation::HasIntervention, Facet::Procedure, p.description, p.code);
  for (const auto& m : record.medications)
    link(Relation::HasIntervention, Facet::Medication, m);

  const std::pair<const std::optional<std::string>*, const char*> social[] = {
      {&record.employment, "employment"},
      {&record.housing, "housing"},
      {&record.household, "household"}};
  for (const auto& [value, aspect] : social)
    if (*value) link(Relation::HasSocialContext, Facet::Social, **value, aspect);

  if (record.ethnicity)
    link(Relation::HasRaceOrEthnicity, Facet::RaceEthnicity, *record.ethnicity);
  if (record.religion) link(Relation::FollowsReligion, Facet::Religion, *record.religion);
  if (record.gender) link(Relation::HasGender, Facet::Gender, *record.gender);
  if (record.marital_status)
    link(Relation::HasMaritalStatus, Facet::Marital, *record.marital_status);

  const std::string age =
      link(Relation::HasAge, Facet::Age, "age " + age_bucket(record.age_years));
  triples.insert({age, schema.age_in_years(),
                  Term::literal(std::to_string(record.age_years), schema.xsd_integer)});

  g.triples.assign(triples.begin(), triples.end());
  return g;
}

bool is_star(const TripleGraph& graph) {
  const auto patient = graph.node_meta.find(graph.patient_node);
  if (patient == graph.node_meta.end() || patient->second.facet != Facet::Patient)
    return false;
  std::set<std::string> linked;
  for (const auto& t : graph.triples) {
    if (!graph.node_meta.contains(t.subject)) return false;
    if (t.object.is_iri()) {
      if (t.subject != graph.patient_node) return false;
      if (!graph.node_meta.contains(t.object.value)) return false;
      linked.insert(t.object.value);
    }
  }
  for (const auto& [node, meta] : graph.node_meta) {
    if (node == graph.patient_node) continue;
    if (meta.facet == Facet::Patient || !linked.contains(node)) return false;
  }
  // Literal-bearing subjects must themselves be leaves of the star.
  return std::all_of(graph.triples.begin(), graph.triples.end(), [&](const Triple& t) {
    return t.object.is_iri() || t.subject == graph.patient_node || linked.contains(t.subject);
  });
}

std::vector<Triple> query(const TripleGraph& graph, const TriplePattern& pattern) {
  std::vector<Triple> out;
  for (const auto& t : graph.triples)
    if (matches(t, pattern)) out.push_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pkgraph::pkg

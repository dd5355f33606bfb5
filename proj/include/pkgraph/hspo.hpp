#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace pkgraph::hspo {

enum class Relation : std::uint8_t {
  HasDisease,
  HasIntervention,
  HasSocialContext,
  HasRaceOrEthnicity,
  FollowsReligion,
  HasGender,
  HasMaritalStatus,
  HasAge,
  HasDemographics,
  Has,
};

inline constexpr std::array<Relation, 10> kAllRelations = {
    Relation::HasDisease,      Relation::HasIntervention,  Relation::HasSocialContext,
    Relation::HasRaceOrEthnicity, Relation::FollowsReligion, Relation::HasGender,
    Relation::HasMaritalStatus, Relation::HasAge,          Relation::HasDemographics,
    Relation::Has};

// The eight patient-to-facet relations of the ontology schema.
inline constexpr std::array<Relation, 8> kFacetRelations = {
    Relation::HasDisease,      Relation::HasIntervention,  Relation::HasSocialContext,
    Relation::HasRaceOrEthnicity, Relation::FollowsReligion, Relation::HasGender,
    Relation::HasMaritalStatus, Relation::HasAge};

std::string_view name(Relation r);
std::optional<Relation> relation_from_name(std::string_view name);

enum class Facet : std::uint8_t {
  Disease,
  Medication,
  Procedure,
  Social,
  RaceEthnicity,
  Religion,
  Gender,
  Marital,
  Age,
  Group,
  Patient,
};

std::string_view name(Facet f);
std::optional<Facet> facet_from_name(std::string_view name);
bool is_demographic(Facet f);

// Relation linking the patient to a leaf of the given facet.
Relation facet_relation(Facet f);

// IRI layout. Predicates live under `vocabulary`; graph nodes under `resource`.
struct HspoSchema {
  std::string vocabulary = "https://w3id.org/hspo#";
  std::string resource = "https://w3id.org/hspo/resource/";
  std::string xsd_integer = "http://www.w3.org/2001/XMLSchema#integer";

  std::string predicate(Relation r) const { return vocabulary + std::string(name(r)); }
  std::string age_in_years() const { return vocabulary + "age_in_years"; }
};

}  // namespace pkgraph::hspo

#include "pkgraph/hspo.hpp"

#include <utility>

namespace pkgraph::hspo {
namespace {

constexpr std::pair<Relation, std::string_view> kRelationNames[] = {
    {Relation::HasDisease, "hasDisease"},
    {Relation::HasIntervention, "hasIntervention"},
    {Relation::HasSocialContext, "hasSocialContext"},
    {Relation::HasRaceOrEthnicity, "hasRaceOrEthnicity"},
    {Relation::FollowsReligion, "followsReligion"},
    {Relation::HasGender, "hasGender"},
    {Relation::HasMaritalStatus, "hasMaritalStatus"},
    {Relation::HasAge, "hasAge"},
    {Relation::HasDemographics, "hasDemographics"},
    {Relation::Has, "has"},
};

constexpr std::pair<Facet, std::string_view> kFacetNames[] = {
    {Facet::Disease, "disease"},     {Facet::Medication, "medication"},
    {Facet::Procedure, "procedure"}, {Facet::Social, "social"},
    {Facet::RaceEthnicity, "race_ethnicity"}, {Facet::Religion, "religion"},
    {Facet::Gender, "gender"},       {Facet::Marital, "marital"},
    {Facet::Age, "age"},             {Facet::Group, "group"},
    {Facet::Patient, "patient"},
};

}  // namespace

std::string_view name(Relation r) {
  for (const auto& [rel, n] : kRelationNames)
    if (rel == r) return n;
  return "unknown";
}

std::optional<Relation> relation_from_name(std::string_view n) {
  for (const auto& [rel, rn] : kRelationNames)
    if (rn == n) return rel;
  return std::nullopt;
}

std::string_view name(Facet f) {
  for (const auto& [facet, n] : kFacetNames)
    if (facet == f) return n;
  return "unknown";
}

std::optional<Facet> facet_from_name(std::string_view n) {
  for (const auto& [facet, fn] : kFacetNames)
    if (fn == n) return facet;
  return std::nullopt;
}

bool is_demographic(Facet f) {
  return f == Facet::RaceEthnicity || f == Facet::Religion || f == Facet::Gender ||
         f == Facet::Marital || f == Facet::Age;
}

Relation facet_relation(Facet f) {
  switch (f) {
    case Facet::Disease: return Relation::HasDisease;
    case Facet::Medication:
    case Facet::Procedure: return Relation::HasIntervention;
    case Facet::Social: return Relation::HasSocialContext;
    case Facet::RaceEthnicity: return Relation::HasRaceOrEthnicity;
    case Facet::Religion: return Relation::FollowsReligion;
    case Facet::Gender: return Relation::HasGender;
    case Facet::Marital: return Relation::HasMaritalStatus;
    case Facet::Age: return Relation::HasAge;
    case Facet::Group:
    case Facet::Patient: break;
  }
  return Relation::Has;
}

}  // namespace pkgraph::hspo

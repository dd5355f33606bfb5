#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pkgraph::codes {

struct Family {
  std::string code;         // family stem, e.g. "428", "V45", "3722"
  std::string description;  // family-level description
  std::vector<std::string> subcodes;
  std::vector<std::string> subcode_descriptions;
};

// Bundled ICD-9-style code universe. Families are listed roughly in order of
// clinical frequency, which the cohort generator uses as Zipf rank.
std::span<const Family> diagnosis_families();
std::span<const Family> procedure_families();
std::span<const std::string> medication_names();

std::optional<std::string> diagnosis_family_description(std::string_view family);
std::optional<std::string> procedure_family_description(std::string_view family);

// Categorical vocabularies for demographic and social facets.
std::span<const std::string> genders();
std::span<const std::string> religions();
std::span<const std::string> marital_statuses();
std::span<const std::string> ethnicities();
std::span<const std::string> employment_statuses();
std::span<const std::string> housing_conditions();
std::span<const std::string> household_compositions();

}  // namespace pkgraph::codes

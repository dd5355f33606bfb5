#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pkgraph {

struct CodedEntry {
  std::string code;
  std::string description;

  bool operator==(const CodedEntry&) const = default;
};

// One hospital admission. Absent categorical facets are std::nullopt; absent
// list facets are empty. In the record file, absence is key omission.
struct AdmissionRecord {
  std::string patient_id;
  std::string admission_id;
  int admit_day = 0;
  int discharge_day = 0;
  std::optional<int> deceased_day;

  std::optional<std::string> gender;
  int age_years = 0;
  std::optional<std::string> marital_status;
  std::optional<std::string> religion;
  std::optional<std::string> ethnicity;

  std::vector<CodedEntry> diagnoses;
  std::vector<CodedEntry> procedures;
  std::vector<std::string> medications;

  std::optional<std::string> employment;
  std::optional<std::string> housing;
  std::optional<std::string> household;

  std::optional<bool> readmitted_within_window;

  bool operator==(const AdmissionRecord&) const = default;
};

// Decade bucket used both as the age node label and the tabular age group,
// e.g. 67 -> "60-69".
std::string age_bucket(int age_years);

}  // namespace pkgraph

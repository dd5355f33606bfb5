#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pkgraph/record.hpp"

namespace pkgraph::preprocess {

struct PreprocessConfig {
  int window_days = 30;
  // ICD-9 families for heart failure and cardiac dysrhythmias.
  std::set<std::string> cohort_codes = {"427", "428"};
  bool filter_cohort = true;

  void validate() const;
};

// True for ICD-9-like codes: a numeric stem of 3-4 digits, an E stem of 3-4
// digits or a V stem of 2-4 digits, optionally followed by ".d" .. ".ddd".
bool is_icd_code(std::string_view code);

// Family code: the part before the dot. Idempotent. Throws ValidationError
// naming the code when it is malformed.
std::string group_icd_code(std::string_view code);

// Replaces codes by their families, deduplicates families within an admission
// and swaps in the bundled family description.
std::vector<AdmissionRecord> group_records(std::vector<AdmissionRecord> records);

// Labels each admission by whether the same patient is admitted again within
// window_days of discharge, and drops admissions followed by death (during the
// stay or less than window_days after discharge). Output is sorted by
// (patient_id, admit_day, admission_id), so input order does not matter.
std::vector<AdmissionRecord> label_and_exclude(std::vector<AdmissionRecord> records,
                                               const PreprocessConfig& config);

std::vector<AdmissionRecord> filter_cohort(std::vector<AdmissionRecord> records,
                                           const PreprocessConfig& config);

// group -> label/exclude -> (optional) cohort filter.
std::vector<AdmissionRecord> run(std::vector<AdmissionRecord> records,
                                 const PreprocessConfig& config);

struct FacetMissing {
  std::string label;
  std::size_t missing = 0;
};

struct Summary {
  std::size_t total = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
  std::vector<FacetMissing> missing;
};

Summary summarize(const std::vector<AdmissionRecord>& records);

// Plain-text report: admission counts followed by a two-column missingness table.
std::string format_summary(const Summary& summary);

}  // namespace pkgraph::preprocess

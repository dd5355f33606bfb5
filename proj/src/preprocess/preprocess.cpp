#include "pkgraph/preprocess.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <tuple>
#include <map>
#include <regex>
#include <sstream>

#include "pkgraph/code_table.hpp"
#include "pkgraph/error.hpp"

namespace pkgraph::preprocess {
namespace {

std::vector<CodedEntry> group_entries(
    const std::vector<CodedEntry>& entries,
    std::optional<std::string> (*describe)(std::string_view)) {
  std::vector<CodedEntry> out;
  for (const auto& e : entries) {
    std::string family = group_icd_code(e.code);
    if (std::any_of(out.begin(), out.end(),
                    [&](const CodedEntry& o) { return o.code == family; }))
      continue;
    auto description = describe(family);
    if (!description)
      throw ValidationError("family code '" + family + "' (from '" + e.code +
                            "') missing from the description table");
    out.push_back({std::move(family), std::move(*description)});
  }
  return out;
}

}  // namespace

void PreprocessConfig::validate() const {
  if (window_days < 1) throw ConfigError("window_days must be >= 1");
  if (filter_cohort && cohort_codes.empty())
    throw ConfigError("cohort_codes must be non-empty when filtering");
}

bool is_icd_code(std::string_view code) {
  static const std::regex pattern(R"((\d{3,4}|E\d{3,4}|V\d{2,4})(\.\d{1,3})?)");
  return std::regex_match(code.begin(), code.end(), pattern);
}

std::string group_icd_code(std::string_view code) {
  if (!is_icd_code(code))
    throw ValidationError("malformed ICD-9 code '" + std::string(code) + "'");
  return std::string(code.substr(0, code.find('.')));
}

std::vector<AdmissionRecord> group_records(std::vector<AdmissionRecord> records) {
  for (auto& r : records) {
    r.diagnoses = group_entries(r.diagnoses, &codes::diagnosis_family_description);
    r.procedures = group_entries(r.procedures, &codes::procedure_family_description);
  }
  return records;
}

std::vector<AdmissionRecord> label_and_exclude(std::vector<AdmissionRecord> records,
                                               const PreprocessConfig& config) {
  config.validate();
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.patient_id, a.admit_day, a.admission_id) <
           std::tie(b.patient_id, b.admit_day, b.admission_id);
  });

  std::vector<AdmissionRecord> out;
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& r = records[i];
    const bool has_next = i + 1 < records.size() &&
                          records[i + 1].patient_id == r.patient_id;
    const bool readmitted =
        has_next && records[i + 1].admit_day - r.discharge_day <= config.window_days;
    const bool died = r.deceased_day &&
                      *r.deceased_day - r.discharge_day < config.window_days;
    if (died) continue;
    r.readmitted_within_window = readmitted;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<AdmissionRecord> filter_cohort(std::vector<AdmissionRecord> records,
                                           const PreprocessConfig& config) {
  if (config.cohort_codes.empty())
    throw ConfigError("cohort_codes must be non-empty when filtering");
  std::erase_if(records, [&](const AdmissionRecord& r) {
    return std::none_of(r.diagnoses.begin(), r.diagnoses.end(), [&](const auto& d) {
      return config.cohort_codes.count(d.code) > 0;
    });
  });
  return records;
}

std::vector<AdmissionRecord> run(std::vector<AdmissionRecord> records,
                                 const PreprocessConfig& config) {
  config.validate();
  records = label_and_exclude(group_records(std::move(records)), config);
  if (config.filter_cohort) records = filter_cohort(std::move(records), config);
  return records;
}

Summary summarize(const std::vector<AdmissionRecord>& records) {
  Summary s;
  s.total = records.size();
  std::vector<std::pair<std::string, std::function<bool(const AdmissionRecord&)>>>
      facets = {
          {"Gender", [](const auto& r) { return !r.gender; }},
          {"Religion", [](const auto& r) { return !r.religion; }},
          {"Marital Status", [](const auto& r) { return !r.marital_status; }},
          {"Race/Ethnicity", [](const auto& r) { return !r.ethnicity; }},
          {"Diseases/Diagnoses", [](const auto& r) { return r.diagnoses.empty(); }},
          {"Medication", [](const auto& r) { return r.medications.empty(); }},
          {"Procedures", [](const auto& r) { return r.procedures.empty(); }},
          {"Employment", [](const auto& r) { return !r.employment; }},
          {"Housing conditions", [](const auto& r) { return !r.housing; }},
          {"Household composition", [](const auto& r) { return !r.household; }},
      };
  for (const auto& [label, is_missing] : facets) {
    FacetMissing fm{label, 0};
    for (const auto& r : records) fm.missing += is_missing(r) ? 1 : 0;
    s.missing.push_back(fm);
  }
  for (const auto& r : records) {
    if (r.readmitted_within_window.value_or(false)) ++s.positives;
    else ++s.negatives;
  }
  return s;
}

std::string format_summary(const Summary& s) {
  auto pct = [&](std::size_t n) {
    char buf[64];
    const double p = s.total ? 100.0 * static_cast<double>(n) / s.total : 0.0;
    std::snprintf(buf, sizeof buf, "%zu (%.2f%%)", n, p);
    return std::string(buf);
  };
  std::ostringstream out;
  out << "Total admissions: " << s.total << '\n'
      << "Readmitted within window: " << pct(s.positives) << '\n'
      << "Not readmitted: " << pct(s.negatives) << "\n\n";

  std::size_t w1 = std::string("Information").size();
  std::size_t w2 = std::string("Records with missing information").size();
  for (const auto& f : s.missing) {
    w1 = std::max(w1, f.label.size());
    w2 = std::max(w2, pct(f.missing).size());
  }
  auto row = [&](const std::string& a, const std::string& b) {
    out << "| " << a << std::string(w1 - a.size(), ' ') << " | " << b
        << std::string(w2 - b.size(), ' ') << " |\n";
  };
  const std::string rule = "+" + std::string(w1 + 2, '-') + "+" +
                           std::string(w2 + 2, '-') + "+\n";
  out << rule;
  row("Information", "Records with missing information");
  out << rule;
  for (const auto& f : s.missing) row(f.label, f.missing ? pct(f.missing) : "0");
  out << rule;
  return out.str();
}

}  // namespace pkgraph::preprocess

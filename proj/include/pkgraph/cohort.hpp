#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pkgraph/record.hpp"

namespace pkgraph::cohort {

// Per-facet probability that the facet is blank in a record. Defaults are the
// missing-record percentages of a real processed admission table.
struct MissingnessProfile {
  std::map<std::string, double> rates = default_rates();

  static std::map<std::string, double> default_rates();
  static MissingnessProfile none();
  static const std::vector<std::string>& facet_names();

  // Throws ConfigError on unknown facets or rates outside [0,1].
  void validate() const;
};

// Optional label model used instead of readmission_rate. Keys are namespaced:
// "diagnosis:<family>", "procedure:<family>", "medication:<name>".
// P(readmit) = logistic(bias + sum of weights of present keys + N(0, noise_std)).
struct PlantedSignal {
  std::map<std::string, double> weights;
  double bias = 0.0;
  double noise_std = 0.0;
};

struct CohortConfig {
  std::size_t n_patients = 1000;
  int max_admissions_per_patient = 6;
  double readmission_rate = 0.092;
  // Probability that a patient returns after a non-readmitted stay.
  double later_admission_rate = 0.35;
  double deceased_rate = 0.05;
  MissingnessProfile missingness;
  std::optional<PlantedSignal> planted_signal;
  std::uint64_t seed = 0;

  void validate() const;
};

std::vector<AdmissionRecord> generate_cohort(const CohortConfig& config);

// Independently blanks each facet with its configured probability. Gender is
// never blanked; diagnoses are not a profile facet.
std::vector<AdmissionRecord> apply_missingness(std::vector<AdmissionRecord> records,
                                               const MissingnessProfile& profile,
                                               std::uint64_t seed);

// Keys of the planted-signal vocabulary present in a record (families are
// derived from the full codes).
std::vector<std::string> signal_keys(const AdmissionRecord& record);

double logistic(double x);

}  // namespace pkgraph::cohort

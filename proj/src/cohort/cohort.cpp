#include "pkgraph/cohort.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "pkgraph/code_table.hpp"
#include "pkgraph/error.hpp"
#include "pkgraph/preprocess.hpp"
#include "pkgraph/seed.hpp"

namespace pkgraph {

std::string age_bucket(int age_years) {
  const int lo = std::max(0, age_years) / 10 * 10;
  return std::to_string(lo) + "-" + std::to_string(lo + 9);
}

namespace cohort {
namespace {

using Rng = std::mt19937_64;

std::discrete_distribution<std::size_t> zipf(std::size_t n, double exponent,
                                             double offset = 1.0) {
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k)
    w[k] = 1.0 / std::pow(static_cast<double>(k) + offset, exponent);
  return {w.begin(), w.end()};
}

template <typename T>
const T& pick(std::span<const T> items, Rng& rng) {
  std::uniform_int_distribution<std::size_t> d(0, items.size() - 1);
  return items[d(rng)];
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

std::string format_id(char prefix, std::size_t n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%0*zu", prefix, width, n);
  return buf;
}

// Samples codes from a family table: Zipf over families, then a skewed pick
// among the family's subcategories so that some fine-grained codes are rare.
class CodeSampler {
 public:
  CodeSampler(std::span<const codes::Family> families)
      : families_(families), family_dist_(zipf(families.size(), 1.0, 2.0)) {}

  CodedEntry operator()(Rng& rng) {
    const auto& f = families_[family_dist_(rng)];
    auto sub = zipf(f.subcodes.size(), 1.5);
    const std::size_t k = sub(rng);
    return {f.subcodes[k], f.subcode_descriptions[k]};
  }

 private:
  std::span<const codes::Family> families_;
  std::discrete_distribution<std::size_t> family_dist_;
};

std::vector<CodedEntry> sample_codes(CodeSampler& sampler, int count, Rng& rng) {
  std::vector<CodedEntry> out;
  for (int i = 0; i < count; ++i) {
    auto entry = sampler(rng);
    const bool seen = std::any_of(out.begin(), out.end(), [&](const auto& e) {
      return e.code == entry.code;
    });
    if (!seen) out.push_back(std::move(entry));
  }
  return out;
}

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::map<std::string, double> MissingnessProfile::default_rates() {
  return {
      {"religion", 0.3469},   {"marital_status", 0.1877},
      {"ethnicity", 0.0923},  {"medication", 0.1566},
      {"procedures", 0.1174}, {"employment", 0.4977},
      {"housing", 0.9696},    {"household", 0.8375},
  };
}

MissingnessProfile MissingnessProfile::none() {
  MissingnessProfile p;
  for (auto& [_, rate] : p.rates) rate = 0.0;
  return p;
}

const std::vector<std::string>& MissingnessProfile::facet_names() {
  static const std::vector<std::string> names = {
      "religion",   "marital_status", "ethnicity", "medication",
      "procedures", "employment",     "housing",   "household"};
  return names;
}

void MissingnessProfile::validate() const {
  const auto& known = facet_names();
  for (const auto& [facet, rate] : rates) {
    if (std::find(known.begin(), known.end(), facet) == known.end())
      throw ConfigError("unknown missingness facet '" + facet + "'");
    if (!in_unit_interval(rate))
      throw ConfigError("missingness rate for '" + facet + "' outside [0,1]");
  }
}

void CohortConfig::validate() const {
  if (!in_unit_interval(readmission_rate))
    throw ConfigError("readmission_rate outside [0,1]");
  if (!in_unit_interval(later_admission_rate))
    throw ConfigError("later_admission_rate outside [0,1]");
  if (!in_unit_interval(deceased_rate))
    throw ConfigError("deceased_rate outside [0,1]");
  if (max_admissions_per_patient < 1)
    throw ConfigError("max_admissions_per_patient must be positive");
  if (planted_signal && !(planted_signal->noise_std >= 0.0))
    throw ConfigError("planted signal noise_std must be nonnegative");
  missingness.validate();
}

std::vector<std::string> signal_keys(const AdmissionRecord& record) {
  std::set<std::string> keys;
  for (const auto& d : record.diagnoses)
    keys.insert("diagnosis:" + preprocess::group_icd_code(d.code));
  for (const auto& p : record.procedures)
    keys.insert("procedure:" + preprocess::group_icd_code(p.code));
  for (const auto& m : record.medications) keys.insert("medication:" + m);
  return {keys.begin(), keys.end()};
}

std::vector<AdmissionRecord> generate_cohort(const CohortConfig& config) {
  config.validate();
  Rng rng(config.seed);

  CodeSampler diagnoses(codes::diagnosis_families());
  CodeSampler procedures(codes::procedure_families());
  const auto meds = codes::medication_names();
  auto med_dist = zipf(meds.size(), 1.0, 2.0);
  std::normal_distribution<double> noise(0.0, 1.0);

  std::vector<AdmissionRecord> records;
  std::size_t admission_counter = 0;

  for (std::size_t p = 0; p < config.n_patients; ++p) {
    AdmissionRecord base;
    base.patient_id = format_id('P', p + 1, 6);
    base.gender = pick(codes::genders(), rng);
    const int base_age = uniform_int(rng, 18, 90);
    base.marital_status = pick(codes::marital_statuses(), rng);
    base.religion = pick(codes::religions(), rng);
    base.ethnicity = pick(codes::ethnicities(), rng);
    base.employment = pick(codes::employment_statuses(), rng);
    base.housing = pick(codes::housing_conditions(), rng);
    base.household = pick(codes::household_compositions(), rng);

    const std::size_t first = records.size();
    int day = uniform_int(rng, 0, 3650);
    for (int k = 0;; ++k) {
      AdmissionRecord r = base;
      r.admission_id = format_id('A', ++admission_counter, 7);
      r.admit_day = day;
      r.discharge_day = day + uniform_int(rng, 1, 14);
      r.age_years = base_age + r.admit_day / 365;
      r.diagnoses = sample_codes(diagnoses, uniform_int(rng, 3, 14), rng);
      r.procedures = sample_codes(procedures, uniform_int(rng, 1, 5), rng);
      const int n_meds = uniform_int(rng, 1, 12);
      for (int i = 0; i < n_meds; ++i) {
        const auto& name = meds[med_dist(rng)];
        if (std::find(r.medications.begin(), r.medications.end(), name) ==
            r.medications.end())
          r.medications.push_back(name);
      }

      double p_readmit = config.readmission_rate;
      if (config.planted_signal) {
        const auto& sig = *config.planted_signal;
        double z = sig.bias + sig.noise_std * noise(rng);
        for (const auto& key : signal_keys(r)) {
          if (auto it = sig.weights.find(key); it != sig.weights.end())
            z += it->second;
        }
        p_readmit = logistic(z);
      }
      const bool can_continue = k + 1 < config.max_admissions_per_patient;
      const bool readmit = uniform01(rng) < p_readmit && can_continue;
      const bool later = uniform01(rng) < config.later_admission_rate;
      const int discharge = r.discharge_day;
      records.push_back(std::move(r));

      if (readmit) {
        day = discharge + uniform_int(rng, 1, 30);
      } else if (later && can_continue) {
        day = discharge + uniform_int(rng, 31, 730);
      } else {
        break;
      }
    }

    if (uniform01(rng) < config.deceased_rate) {
      const auto& last = records.back();
      const int death = uniform01(rng) < 0.5
                            ? uniform_int(rng, last.admit_day, last.discharge_day)
                            : last.discharge_day + uniform_int(rng, 1, 90);
      for (std::size_t i = first; i < records.size(); ++i)
        records[i].deceased_day = death;
    }
  }

  return apply_missingness(std::move(records), config.missingness,
                           derive_seed(config.seed, "missingness"));
}

std::vector<AdmissionRecord> apply_missingness(std::vector<AdmissionRecord> records,
                                               const MissingnessProfile& profile,
                                               std::uint64_t seed) {
  profile.validate();
  Rng rng(seed);
  const auto& facets = MissingnessProfile::facet_names();
  std::vector<double> rates;
  for (const auto& f : facets) {
    auto it = profile.rates.find(f);
    rates.push_back(it == profile.rates.end() ? 0.0 : it->second);
  }

  for (auto& r : records) {
    for (std::size_t i = 0; i < facets.size(); ++i) {
      // One draw per facet per record regardless of rate keeps streams aligned.
      if (!(uniform01(rng) < rates[i])) continue;
      const auto& f = facets[i];
      if (f == "religion") r.religion.reset();
      else if (f == "marital_status") r.marital_status.reset();
      else if (f == "ethnicity") r.ethnicity.reset();
      else if (f == "medication") r.medications.clear();
      else if (f == "procedures") r.procedures.clear();
      else if (f == "employment") r.employment.reset();
      else if (f == "housing") r.housing.reset();
      else if (f == "household") r.household.reset();
    }
  }
  return records;
}

}  // namespace cohort
}  // namespace pkgraph

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <sstream>

#include "pkgraph/code_table.hpp"
#include "pkgraph/cohort.hpp"
#include "pkgraph/error.hpp"
#include "pkgraph/preprocess.hpp"
#include "pkgraph/record_io.hpp"

namespace pkgraph::cohort {
namespace {

std::string serialize(const std::vector<AdmissionRecord>& records) {
  std::ostringstream out;
  write_records(out, records);
  return out.str();
}

TEST(Cohort, ZeroPatientsGivesEmptyCohort) {
  CohortConfig c;
  c.n_patients = 0;
  EXPECT_TRUE(generate_cohort(c).empty());
}

TEST(Cohort, SameSeedSameBytes) {
  CohortConfig c;
  c.n_patients = 200;
  c.seed = 7;
  EXPECT_EQ(serialize(generate_cohort(c)), serialize(generate_cohort(c)));
  CohortConfig other = c;
  other.seed = 8;
  EXPECT_NE(serialize(generate_cohort(c)), serialize(generate_cohort(other)));
}

TEST(Cohort, RejectsRatesOutsideUnitInterval) {
  CohortConfig c;
  c.readmission_rate = 1.5;
  EXPECT_THROW(generate_cohort(c), ConfigError);
  c = {};
  c.deceased_rate = -0.1;
  EXPECT_THROW(generate_cohort(c), ConfigError);
  c = {};
  c.missingness.rates["housing"] = 2.0;
  EXPECT_THROW(generate_cohort(c), ConfigError);
}

TEST(Cohort, PositiveRateTracksReadmissionRate) {
  CohortConfig c;
  c.n_patients = 5000;
  c.readmission_rate = 0.092;
  c.seed = 1;
  const auto labeled = preprocess::label_and_exclude(
      preprocess::group_records(generate_cohort(c)), preprocess::PreprocessConfig{});
  ASSERT_GE(labeled.size(), 5000u);
  std::size_t positives = 0;
  for (const auto& r : labeled) positives += *r.readmitted_within_window ? 1 : 0;
  const double rate = static_cast<double>(positives) / static_cast<double>(labeled.size());
  EXPECT_GE(rate, 0.072);
  EXPECT_LE(rate, 0.112);
}

TEST(Cohort, AdmissionIntervalsSortedAndDisjoint) {
  CohortConfig c;
  c.n_patients = 500;
  c.seed = 3;
  std::map<std::string, std::vector<const AdmissionRecord*>> by_patient;
  const auto records = generate_cohort(c);
  for (const auto& r : records) by_patient[r.patient_id].push_back(&r);
  for (const auto& [_, stays] : by_patient) {
    for (std::size_t i = 0; i < stays.size(); ++i) {
      EXPECT_LT(stays[i]->admit_day, stays[i]->discharge_day);
      if (i > 0) {
        EXPECT_GT(stays[i]->admit_day, stays[i - 1]->discharge_day);
      }
    }
  }
}

TEST(Cohort, CodeUniverseSize) {
  const auto dx = codes::diagnosis_families();
  const auto px = codes::procedure_families();
  EXPECT_GE(dx.size(), 200u);
  EXPECT_GE(px.size(), 100u);
  for (const char* family : {"410", "427", "428"})
    EXPECT_TRUE(codes::diagnosis_family_description(family).has_value()) << family;
}

// With noise off, scoring held-out records by the planted logistic model
// separates the classes. AUC is computed by pairwise counting.
TEST(Cohort, PlantedSignalIsRecoverable) {
  CohortConfig c;
  c.n_patients = 3000;
  c.seed = 21;
  PlantedSignal s;
  s.bias = -5.0;
  s.weights = {{"diagnosis:584", 8.0}, {"medication:vancomycin", 8.0}};
  c.planted_signal = s;
  c.max_admissions_per_patient = 50;
  c.deceased_rate = 0.0;
  const auto records =
      preprocess::label_and_exclude(generate_cohort(c), preprocess::PreprocessConfig{});
  std::vector<double> pos, neg;
  for (std::size_t i = records.size() / 2; i < records.size(); ++i) {
    const auto& r = records[i];
    double z = s.bias;
    for (const auto& k : signal_keys(r))
      if (auto it = s.weights.find(k); it != s.weights.end()) z += it->second;
    (*r.readmitted_within_window ? pos : neg).push_back(logistic(z));
  }
  ASSERT_FALSE(pos.empty());
  ASSERT_FALSE(neg.empty());
  double wins = 0.0;
  for (double p : pos)
    for (double n : neg) wins += p > n ? 1.0 : (p == n ? 0.5 : 0.0);
  EXPECT_GE(wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size())), 0.95);
}

// Empty clinical lists come from the missingness profile only.
TEST(Cohort, ClinicalListsPresentWithoutMissingness) {
  CohortConfig c;
  c.n_patients = 300;
  c.missingness = MissingnessProfile::none();
  for (const auto& r : generate_cohort(c)) {
    EXPECT_FALSE(r.diagnoses.empty());
    EXPECT_FALSE(r.procedures.empty());
    EXPECT_FALSE(r.medications.empty());
  }
}

TEST(Missingness, ZeroProfileLeavesRecordsUnchanged) {
  CohortConfig c;
  c.n_patients = 100;
  c.missingness = MissingnessProfile::none();
  const auto records = generate_cohort(c);
  EXPECT_EQ(apply_missingness(records, MissingnessProfile::none(), 5), records);
}

TEST(Missingness, CertainHousingRemovesEveryHousingField) {
  CohortConfig c;
  c.n_patients = 100;
  c.missingness = MissingnessProfile::none();
  MissingnessProfile p = MissingnessProfile::none();
  p.rates["housing"] = 1.0;
  for (const auto& r : apply_missingness(generate_cohort(c), p, 5)) {
    EXPECT_FALSE(r.housing.has_value());
    EXPECT_TRUE(r.gender.has_value());
  }
}

TEST(Missingness, UnknownFacetRejected) {
  MissingnessProfile p;
  p.rates["gender"] = 0.5;
  EXPECT_THROW(apply_missingness({}, p, 1), ConfigError);
}

TEST(Missingness, DefaultHousingRate) {
  CohortConfig c;
  c.n_patients = 10000;
  c.seed = 2;
  const auto records = generate_cohort(c);
  ASSERT_GE(records.size(), 10000u);
  std::size_t missing = 0, no_gender = 0;
  for (const auto& r : records) {
    missing += r.housing ? 0 : 1;
    no_gender += r.gender ? 0 : 1;
  }
  EXPECT_NEAR(100.0 * static_cast<double>(missing) / static_cast<double>(records.size()), 96.96,
              1.5);
  EXPECT_EQ(no_gender, 0u);
}

TEST(Missingness, DeterministicUnderSeed) {
  CohortConfig c;
  c.n_patients = 50;
  c.missingness = MissingnessProfile::none();
  const auto base = generate_cohort(c);
  MissingnessProfile p;
  EXPECT_EQ(apply_missingness(base, p, 9), apply_missingness(base, p, 9));
  EXPECT_NE(apply_missingness(base, p, 9), apply_missingness(base, p, 10));
}

TEST(RecordIo, RoundTripsThroughJsonLines) {
  CohortConfig c;
  c.n_patients = 40;
  c.seed = 4;
  auto records = preprocess::run(generate_cohort(c), {});
  std::istringstream in(serialize(records));
  EXPECT_EQ(read_records(in), records);
}

TEST(RecordIo, BadLineReportsLineNumber) {
  std::istringstream in("\n{\"patient_id\": 3}\n");
  try {
    read_records(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

}  // namespace
}  // namespace pkgraph::cohort

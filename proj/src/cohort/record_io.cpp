#include "pkgraph/record_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "pkgraph/error.hpp"

namespace pkgraph {
namespace {

using nlohmann::json;

void put_optional(json& j, const char* key, const std::optional<std::string>& v) {
  if (v) j[key] = *v;
}

std::optional<std::string> get_optional(const json& j, const char* key) {
  if (auto it = j.find(key); it != j.end()) return it->get<std::string>();
  return std::nullopt;
}

json coded_list(const std::vector<CodedEntry>& entries) {
  json arr = json::array();
  for (const auto& e : entries)
    arr.push_back({{"code", e.code}, {"description", e.description}});
  return arr;
}

std::vector<CodedEntry> coded_entries(const json& j, const char* key) {
  std::vector<CodedEntry> out;
  if (auto it = j.find(key); it != j.end()) {
    for (const auto& e : *it)
      out.push_back({e.at("code").get<std::string>(),
                     e.at("description").get<std::string>()});
  }
  return out;
}

}  // namespace

json to_json(const AdmissionRecord& r) {
  json j;
  j["patient_id"] = r.patient_id;
  j["admission_id"] = r.admission_id;
  j["admit_day"] = r.admit_day;
  j["discharge_day"] = r.discharge_day;
  if (r.deceased_day) j["deceased_day"] = *r.deceased_day;
  put_optional(j, "gender", r.gender);
  j["age_years"] = r.age_years;
  put_optional(j, "marital_status", r.marital_status);
  put_optional(j, "religion", r.religion);
  put_optional(j, "ethnicity", r.ethnicity);
  if (!r.diagnoses.empty()) j["diagnoses"] = coded_list(r.diagnoses);
  if (!r.procedures.empty()) j["procedures"] = coded_list(r.procedures);
  if (!r.medications.empty()) j["medications"] = r.medications;
  put_optional(j, "employment", r.employment);
  put_optional(j, "housing", r.housing);
  put_optional(j, "household", r.household);
  if (r.readmitted_within_window)
    j["readmitted_within_window"] = *r.readmitted_within_window;
  return j;
}

AdmissionRecord record_from_json(const json& j) {
  AdmissionRecord r;
  r.patient_id = j.at("patient_id").get<std::string>();
  r.admission_id = j.at("admission_id").get<std::string>();
  r.admit_day = j.at("admit_day").get<int>();
  r.discharge_day = j.at("discharge_day").get<int>();
  if (auto it = j.find("deceased_day"); it != j.end()) r.deceased_day = it->get<int>();
  r.gender = get_optional(j, "gender");
  r.age_years = j.at("age_years").get<int>();
  r.marital_status = get_optional(j, "marital_status");
  r.religion = get_optional(j, "religion");
  r.ethnicity = get_optional(j, "ethnicity");
  r.diagnoses = coded_entries(j, "diagnoses");
  r.procedures = coded_entries(j, "procedures");
  if (auto it = j.find("medications"); it != j.end())
    r.medications = it->get<std::vector<std::string>>();
  r.employment = get_optional(j, "employment");
  r.housing = get_optional(j, "housing");
  r.household = get_optional(j, "household");
  if (auto it = j.find("readmitted_within_window"); it != j.end())
    r.readmitted_within_window = it->get<bool>();
  return r;
}

void write_records(std::ostream& out, const std::vector<AdmissionRecord>& records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

std::vector<AdmissionRecord> read_records(std::istream& in) {
  std::vector<AdmissionRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(line_no, std::string("bad admission record: ") + e.what());
    }
  }
  return records;
}

void write_records(const std::filesystem::path& path,
                   const std::vector<AdmissionRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  write_records(out, records);
}

std::vector<AdmissionRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  return read_records(in);
}

}  // namespace pkgraph

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pkgraph/record.hpp"

namespace pkgraph {

nlohmann::json to_json(const AdmissionRecord& record);
AdmissionRecord record_from_json(const nlohmann::json& j);

// Newline-delimited JSON, one admission per line.
void write_records(std::ostream& out, const std::vector<AdmissionRecord>& records);
std::vector<AdmissionRecord> read_records(std::istream& in);

void write_records(const std::filesystem::path& path,
                   const std::vector<AdmissionRecord>& records);
std::vector<AdmissionRecord> read_records(const std::filesystem::path& path);

}  // namespace pkgraph

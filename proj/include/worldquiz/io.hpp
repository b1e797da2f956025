#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "worldquiz/bench.hpp"

namespace worldquiz {

// Unreadable, structurally wrong, or of another version.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed, but the content does not hash to the stored checksum.
class CorruptError : public FormatError {
 public:
  using FormatError::FormatError;
};

using nlohmann::json;

void to_json(json& j, const EntityId& id);
void from_json(const json& j, EntityId& id);
void to_json(json& j, const Fact& f);
void from_json(const json& j, Fact& f);
void to_json(json& j, const EnvSpec& s);
void from_json(const json& j, EnvSpec& s);
void to_json(json& j, const TaskSpec& t);
void from_json(const json& j, TaskSpec& t);
void to_json(json& j, const Question& q);
void from_json(const json& j, Question& q);
void to_json(json& j, const Event& e);
void from_json(const json& j, Event& e);
void to_json(json& j, const Trajectory& t);
void from_json(const json& j, Trajectory& t);
void to_json(json& j, const GradeReport& r);
void from_json(const json& j, GradeReport& r);
void to_json(json& j, const BenchConfig& c);
void from_json(const json& j, BenchConfig& c);

// FNV-1a 64, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

// Hash of the compact serialization with the checksum field left out.
std::string bench_checksum(const BenchFile& bench);
std::string record_checksum(const RunRecord& record);

// Indented JSON with sorted keys and a trailing newline.
std::string bench_to_text(const BenchFile& bench);
std::string record_to_text(const RunRecord& record);
std::string report_to_text(const GradeReport& report);

// Reject other versions and checksum mismatches.
BenchFile bench_from_text(std::string_view text);
RunRecord record_from_text(std::string_view text);

std::string read_file(const std::string& path);
// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace worldquiz

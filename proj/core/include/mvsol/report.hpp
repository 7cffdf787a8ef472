#pragma once

#include "mvsol/json_io.hpp"

#include <string>
#include <vector>

namespace mvsol {

inline constexpr const char* kToolName = "mvsol";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

// Machine-readable run report shared by all CLI subcommands. `failures`
// pinpoints violated certificates in order of detection.
struct RunReport {
    std::string command;
    Json inputs = Json::object();
    Json results = Json::object();
    bool passed = false;
    std::vector<std::string> failures;
};

// Fixed key order; with_timing = false omits both the timestamp and the
// wall-clock entry so two runs with identical inputs are byte-identical.
Json report_to_json(const RunReport& r, bool with_timing, double wall_ms);
std::string render_report(const RunReport& r, bool with_timing, double wall_ms);

void write_text_file(const std::string& path, const std::string& content);

std::string iso8601_utc_now();

} // namespace mvsol

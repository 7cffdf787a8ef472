#include "mvsol/report.hpp"

#include <ctime>
#include <fstream>

namespace mvsol {

Json report_to_json(const RunReport& r, bool with_timing, double wall_ms) {
    Json j = Json::object();
    j["schema_version"] = kSchemaVersion;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = r.command;
    if (with_timing) {
        j["timestamp"] = iso8601_utc_now();
        j["wall_ms"] = wall_ms;
    }
    j["inputs"] = r.inputs;
    j["results"] = r.results;
    j["passed"] = r.passed;
    Json failures = Json::array();
    for (const std::string& f : r.failures) failures.push_back(f);
    j["failures"] = failures;
    return j;
}

std::string render_report(const RunReport& r, bool with_timing, double wall_ms) {
    return report_to_json(r, with_timing, wall_ms).dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << content;
    if (!out) throw ConfigError("failed writing output file: " + path);
}

std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

} // namespace mvsol

#pragma once

// Serialization of scenario reports. One JSON document per scenario run
// (schema "hardy-lab/1"), one CSV per singular-value spectrum and a short
// human-readable summary.

#include <filesystem>
#include <string>
#include <vector>

#include "hardy/kernel_lab.hpp"

namespace hardy {

inline constexpr const char* kSchemaVersion = "hardy-lab/1";

struct ReportOptions {
  bool include_timing = false;  // wall time breaks byte-for-byte stability
};

/// The canonical JSON document, pretty-printed with a trailing newline.
std::string report_json(const ScenarioReport& report, const LabConfig& cfg, const ReportOptions& opts = {});
std::string report_summary(const ScenarioReport& report);
/// File-name-safe form of a spectrum or check name.
std::string slug(const std::string& name);

/// Writes <dir>/<id>.json, <dir>/<id>.summary.txt and one
/// <dir>/<id>.<spectrum>.csv per spectrum; returns the paths written.
std::vector<std::filesystem::path> write_report(const std::filesystem::path& dir, const ScenarioReport& report,
                                                const LabConfig& cfg, const ReportOptions& opts = {});

/// Parses "0.3", "-0.5i", "i", "0.2-0.1i", "1e-3+2i".
cd parse_complex(const std::string& text);

}  // namespace hardy

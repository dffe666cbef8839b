#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "salp/harness.hpp"
#include "salp/stats.hpp"

namespace salp::io {

using nlohmann::json;

/// Shortest text that parses back to the same double.
std::string format_double(double v);

json to_json(const RunTrace& trace);
RunTrace trace_from_json(const json& j);
/// Columns: iteration,best_fitness (iterations numbered from 1).
void write_trace_csv(std::ostream& os, const RunTrace& trace);

json to_json(const stats::ComparisonReport& report);
/// Square matrix, rows/cols = algorithms, cells = "<p_adjusted> <class>".
void write_report_csv(std::ostream& os, const stats::ComparisonReport& report);

json to_json(const harness::ExperimentConfig& cfg);
/// Throws ConfigError naming the offending field.
harness::ExperimentConfig config_from_json(const json& j);
harness::ExperimentConfig read_config(const std::filesystem::path& path);

/// Applies a "key=value" override; dotted keys address nested objects
/// (e.g. "de.weight=0.5"). Values are parsed as JSON, falling back to a string.
void apply_override(json& config, const std::string& assignment);

json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Persists manifest.json plus per-objective directories of CSV files and a
/// report.json. Throws OverwriteError if manifest.json exists and !force.
void write_result_set(const std::filesystem::path& dir, const harness::ResultSet& results, bool force);

/// Inverse of write_result_set (snapshots are not reloaded).
harness::ResultSet load_result_set(const std::filesystem::path& dir);

/// Guard used by every command that writes a manifest.
void check_manifest_guard(const std::filesystem::path& dir, bool force);

} // namespace salp::io

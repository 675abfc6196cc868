#pragma once

#include "demosim_cli/config.h"

#include <demosim/engine.h>

#include <filesystem>
#include <string>

namespace demosim::cli {

/// Writes through a temporary sibling file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string timeseries_csv(const RunResult& result);
/// step,label,ids,detail with ids joined by ';'.
std::string violations_csv(const RunResult& result);
/// `generated_at` is the only field that differs between identical runs.
std::string summary_json(const CliConfig& config, const RunResult& result, const std::string& generated_at);

std::string hex_digest(std::uint64_t digest);
/// Current UTC time, ISO 8601.
std::string utc_timestamp();

/// Writes the three artifacts into `dir` (created if needed).
void write_artifacts(const std::filesystem::path& dir, const CliConfig& config, const RunResult& result);

} // namespace demosim::cli

#pragma once

#include <demosim/engine.h>
#include <demosim/errors.h>

#include <filesystem>
#include <istream>
#include <string>

namespace demosim::cli {

/// Malformed line in a config file.
class ConfigSyntaxError : public ConfigurationError {
public:
    ConfigSyntaxError(const std::string& what, int line) : ConfigurationError(what), line_{line} {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class UnknownKeyError : public ConfigurationError {
public:
    using ConfigurationError::ConfigurationError;
};

/// A value that parses but lies outside its admissible range.
class ConfigRangeError : public ConfigurationError {
public:
    using ConfigurationError::ConfigurationError;
};

struct CliConfig {
    RunConfig run;
    /// Empty when the embedded data set is used.
    std::string fertility_path;
    std::string density_path;
};

/// Flat "key = value" lines, '#' starts a comment. Missing keys keep their
/// defaults. Relative data paths resolve against `base_dir`. Data files are
/// loaded here, so DataError and std::ios_base::failure propagate.
CliConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
CliConfig load_config(const std::filesystem::path& path);

/// Range checks that involve several keys at once.
void check_ranges(const RunConfig& config);

/// The effective configuration as a config file that reproduces the run.
/// Doubles are printed with round-trip precision.
std::string render_config(const CliConfig& config);

} // namespace demosim::cli

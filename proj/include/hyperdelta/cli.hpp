#pragma once

#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hyperdelta/errors.hpp"

namespace hyperdelta::cli {

/// Malformed command line or config file, or a value that fails validation.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Resolved key/value configuration of one command, defaults included.
///
/// Values are stored as normalised text: numbers as %.17g, integers in decimal.
class RunConfig {
public:
    RunConfig(std::string command, std::map<std::string, std::string> values);

    const std::string& command() const noexcept { return command_; }
    const std::map<std::string, std::string>& values() const noexcept { return values_; }

    double number(const std::string& key) const;
    int integer(const std::string& key) const;
    const std::string& text(const std::string& key) const;
    bool has(const std::string& key) const;

    /// FNV-1a over "key=value\n" lines in key order, 16 hex digits.
    std::string hash() const;

private:
    std::string command_;
    std::map<std::string, std::string> values_;
};

/// Known command names, in help order.
const std::vector<std::string>& commands();

/// Keys accepted by `command` with their default values.
const std::map<std::string, std::string>& default_values(const std::string& command);

/// Defaults, then file values, then overrides. Every key must be accepted by the
/// command and every value must parse as its key's type.
RunConfig resolve_config(const std::string& command, const std::map<std::string, std::string>& file_values,
                         const std::map<std::string, std::string>& overrides);

/// resolve_config with the file values read from `path` (none when empty).
RunConfig load_config(const std::string& command, const std::string& path,
                      const std::map<std::string, std::string>& overrides);

/// Parse a flat config file: `key = value` lines, `#` comments, blank lines ignored.
std::map<std::string, std::string> parse_config_text(const std::string& text);

using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct ResultEnvelope {
    std::string command;
    RunConfig config;
    std::vector<std::string> schema;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> diagnostics;
    bool passed = true;  ///< false makes the tool exit with status 1 after writing
};

ResultEnvelope cmd_smatrix(const RunConfig& config);
ResultEnvelope cmd_sturmian(const RunConfig& config);
ResultEnvelope cmd_wavefunction(const RunConfig& config);
ResultEnvelope cmd_verify(const RunConfig& config);

/// Dispatch on config.command().
ResultEnvelope run(const RunConfig& config);

/// Fixed-format renderings; identical envelopes give identical bytes.
std::string to_csv(const ResultEnvelope& env);
std::string to_json(const ResultEnvelope& env);

/// Render in config.text("format") and write to config.text("out"), "-" meaning stdout.
void emit(const ResultEnvelope& env);

/// "%.16e" with nan/inf spelled out.
std::string format_number(double v);

/// Whole tool: parse argv, run, emit. Returns the process exit status
/// (0 success, 1 numerical failure, 2 usage or config error).
int main_entry(int argc, const char* const* argv);

}  // namespace hyperdelta::cli

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hyperdelta/cli.hpp"
#include "hyperdelta_cli_internal.hpp"

namespace hyperdelta::cli {

namespace {

enum class Kind { number, integer, choice, text };

struct KeySpec {
    Kind kind;
    std::vector<std::string> choices;  // for Kind::choice
};

const std::map<std::string, KeySpec>& key_specs() {
    static const std::map<std::string, KeySpec> specs{
        {"c", {Kind::number, {}}},
        {"k", {Kind::number, {}}},
        {"k_min", {Kind::number, {}}},
        {"k_max", {Kind::number, {}}},
        {"k_steps", {Kind::integer, {}}},
        {"R_min", {Kind::number, {}}},
        {"R_max", {Kind::number, {}}},
        {"R_steps", {Kind::integer, {}}},
        {"theta_min", {Kind::number, {}}},
        {"theta_max", {Kind::number, {}}},
        {"theta_steps", {Kind::integer, {}}},
        {"t_max", {Kind::number, {}}},
        {"rel_tol", {Kind::number, {}}},
        {"representation", {Kind::choice, {"closed", "kl", "both"}}},
        {"format", {Kind::choice, {"csv", "json"}}},
        {"out", {Kind::text, {}}},
        {"axis", {Kind::choice, {"imag", "real"}}},
        {"nu_min", {Kind::number, {}}},
        {"nu_max", {Kind::number, {}}},
        {"nu_steps", {Kind::integer, {}}},
        {"kappa_max", {Kind::integer, {}}},
        {"fault", {Kind::choice, {"none", "inverse_s"}}},
        {"tol_override", {Kind::text, {}}},
    };
    return specs;
}

using Defaults = std::map<std::string, std::string>;

const std::map<std::string, Defaults>& command_defaults() {
    static const std::map<std::string, Defaults> defaults{
        {"smatrix",
         {{"c", "-1"}, {"k_min", "0"}, {"k_max", "0.5"}, {"k_steps", "51"}, {"format", "csv"}, {"out", "-"}}},
        {"sturmian",
         {{"c", "-1"},
          {"axis", "imag"},
          {"nu_min", "0"},
          {"nu_max", "10"},
          {"nu_steps", "101"},
          {"R_min", "0.1"},
          {"R_max", "20"},
          {"R_steps", "40"},
          {"kappa_max", "12"},
          {"format", "csv"},
          {"out", "-"}}},
        {"wavefunction",
         {{"c", "-1"},
          {"k", "0.3"},
          {"R_min", "0.5"},
          {"R_max", "5"},
          {"R_steps", "10"},
          {"theta_min", "0"},
          {"theta_max", "1"},
          {"theta_steps", "21"},
          {"representation", "closed"},
          {"t_max", "40"},
          {"rel_tol", "1e-7"},
          {"format", "csv"},
          {"out", "-"}}},
        {"verify",
         {{"c", "-1"},
          {"fault", "none"},
          {"tol_override", ""},
          {"t_max", "40"},
          {"rel_tol", "1e-7"},
          {"format", "csv"},
          {"out", "-"}}},
    };
    return defaults;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& key, const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (text.empty() || end != begin + text.size() || !std::isfinite(v)) {
        throw ConfigError("key '" + key + "': '" + text + "' is not a finite number");
    }
    return v;
}

long long parse_integer(const std::string& key, const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (text.empty() || end != begin + text.size()) {
        throw ConfigError("key '" + key + "': '" + text + "' is not an integer");
    }
    return v;
}

std::string normalise(const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    const KeySpec& spec = key_specs().at(key);
    switch (spec.kind) {
        case Kind::number: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", parse_number(key, value));
            return buf;
        }
        case Kind::integer:
            return std::to_string(parse_integer(key, value));
        case Kind::choice:
            for (const auto& c : spec.choices) {
                if (c == value) {
                    return value;
                }
            }
            throw ConfigError("key '" + key + "': '" + value + "' is not an accepted value");
        case Kind::text:
            break;
    }
    return value;
}

}  // namespace

RunConfig::RunConfig(std::string command, std::map<std::string, std::string> values)
    : command_(std::move(command)), values_(std::move(values)) {}

bool RunConfig::has(const std::string& key) const {
    return values_.count(key) != 0;
}

const std::string& RunConfig::text(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) {
        throw ConfigError("key '" + key + "' is not defined for command " + command_);
    }
    return it->second;
}

double RunConfig::number(const std::string& key) const {
    return parse_number(key, text(key));
}

int RunConfig::integer(const std::string& key) const {
    const long long v = parse_integer(key, text(key));
    if (v < -1000000000LL || v > 1000000000LL) {
        throw ConfigError("key '" + key + "' out of range");
    }
    return static_cast<int>(v);
}

std::string RunConfig::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&](const std::string& s) {
        for (const unsigned char ch : s) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
    };
    feed(command_ + "\n");
    for (const auto& [key, value] : values_) {
        feed(key + "=" + value + "\n");
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

const std::vector<std::string>& commands() {
    static const std::vector<std::string> names{"smatrix", "sturmian", "wavefunction", "verify"};
    return names;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(number) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(number) + ": empty key");
        }
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

RunConfig resolve_config(const std::string& command, const std::map<std::string, std::string>& file_values,
                         const std::map<std::string, std::string>& overrides) {
    std::map<std::string, std::string> values = default_values(command);
    for (const auto* source : {&file_values, &overrides}) {
        for (const auto& [key, value] : *source) {
            if (values.count(key) == 0) {
                throw ConfigError("key '" + key + "' is not accepted by " + command);
            }
            values[key] = value;
        }
    }
    for (auto& [key, value] : values) {
        value = normalise(key, value);
    }
    return RunConfig(command, std::move(values));
}

RunConfig load_config(const std::string& command, const std::string& path,
                      const std::map<std::string, std::string>& overrides) {
    std::map<std::string, std::string> file_values;
    if (!path.empty()) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw ConfigError("cannot read config file '" + path + "'");
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        file_values = parse_config_text(buf.str());
    }
    return resolve_config(command, file_values, overrides);
}

const std::map<std::string, std::string>& default_values(const std::string& command) {
    const auto found = command_defaults().find(command);
    if (found == command_defaults().end()) {
        throw ConfigError("unknown command '" + command + "'");
    }
    return found->second;
}

std::vector<double> linspace(const RunConfig& config, const std::string& prefix) {
    const double lo = config.number(prefix + "_min");
    const double hi = config.number(prefix + "_max");
    const int steps = config.integer(prefix + "_steps");
    if (steps < 1) {
        throw ConfigError(prefix + "_steps must be at least 1");
    }
    if (hi < lo) {
        throw ConfigError(prefix + "_max must not be below " + prefix + "_min");
    }
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        grid[static_cast<std::size_t>(i)] = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
    }
    return grid;
}

}  // namespace hyperdelta::cli

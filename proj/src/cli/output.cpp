#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "hyperdelta/cli.hpp"
#include "json.hpp"

namespace hyperdelta::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_cell(const Cell& cell) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, cell);
}

ordered_json json_cell(const Cell& cell) {
    struct Visitor {
        ordered_json operator()(std::monostate) const { return nullptr; }
        ordered_json operator()(double v) const {
            if (!std::isfinite(v)) {
                return format_number(v);
            }
            return v == 0.0 ? 0.0 : v;
        }
        ordered_json operator()(long long v) const { return v; }
        ordered_json operator()(bool v) const { return v; }
        ordered_json operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, cell);
}

void check_schema(const ResultEnvelope& env) {
    for (const auto& row : env.rows) {
        if (row.size() != env.schema.size()) {
            throw Error("result row width does not match the schema of " + env.command);
        }
    }
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string to_csv(const ResultEnvelope& env) {
    check_schema(env);
    std::string out = "# " + env.command + " " HYPERDELTA_VERSION " " + env.config.hash() + "\n";
    for (std::size_t i = 0; i < env.schema.size(); ++i) {
        out += (i ? "," : "") + env.schema[i];
    }
    out += "\n";
    for (const auto& row : env.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + csv_cell(row[i]);
        }
        out += "\n";
    }
    for (const auto& [key, value] : env.config.values()) {
        out += "# config " + key + "=" + value + "\n";
    }
    for (const auto& [key, value] : env.diagnostics) {
        out += "# diagnostics " + key + "=" + value + "\n";
    }
    return out;
}

std::string to_json(const ResultEnvelope& env) {
    check_schema(env);
    ordered_json doc;
    doc["command"] = env.command;
    doc["version"] = HYPERDELTA_VERSION;
    doc["config_hash"] = env.config.hash();
    ordered_json config = ordered_json::object();
    for (const auto& [key, value] : env.config.values()) {
        config[key] = value;
    }
    doc["config"] = config;
    doc["schema"] = env.schema;
    ordered_json rows = ordered_json::array();
    for (const auto& row : env.rows) {
        ordered_json obj = ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[env.schema[i]] = json_cell(row[i]);
        }
        rows.push_back(obj);
    }
    doc["rows"] = rows;
    ordered_json diagnostics = ordered_json::object();
    for (const auto& [key, value] : env.diagnostics) {
        diagnostics[key] = value;
    }
    doc["diagnostics"] = diagnostics;
    return doc.dump(2) + "\n";
}

void emit(const ResultEnvelope& env) {
    const std::string body = env.config.text("format") == "json" ? to_json(env) : to_csv(env);
    const std::string& path = env.config.text("out");
    if (path == "-" || path.empty()) {
        std::cout << body << std::flush;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw ConfigError("cannot open output file '" + path + "'");
    }
    file << body;
    if (!file.flush()) {
        throw Error("failed writing output file '" + path + "'");
    }
}

}  // namespace hyperdelta::cli

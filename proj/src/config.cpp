#include "twmr/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "twmr/errors.hpp"

namespace twmr::io {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

} // namespace

void Config::set(std::string key, std::string value) {
    entries.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> Config::get(const std::string& key) const {
    std::optional<std::string> found;
    for (const auto& [k, v] : entries) {
        if (k == key) found = v;
    }
    return found;
}

std::vector<std::string> Config::get_all(const std::string& key) const {
    std::vector<std::string> values;
    for (const auto& [k, v] : entries) {
        if (k == key) values.push_back(v);
    }
    return values;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto value = get(key);
    return value ? require_double(key) : fallback;
}

double Config::require_double(const std::string& key) const {
    const auto value = get(key);
    if (!value) throw ValidationError("config: missing required key '" + key + "'");
    char* end = nullptr;
    const double parsed = std::strtod(value->c_str(), &end);
    if (end == value->c_str() || *end != '\0') {
        throw ValidationError("config: key '" + key + "' has a non-numeric value '" + *value + "'");
    }
    return parsed;
}

int Config::get_int(const std::string& key, int fallback) const {
    const auto value = get(key);
    if (!value) return fallback;
    const double parsed = require_double(key);
    const int as_int = static_cast<int>(parsed);
    if (static_cast<double>(as_int) != parsed) {
        throw ValidationError("config: key '" + key + "' must be an integer");
    }
    return as_int;
}

std::string Config::get_string(const std::string& key, std::string fallback) const {
    const auto value = get(key);
    return value ? *value : std::move(fallback);
}

Config parse_config(const std::string& text) {
    Config config;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("config: line " + std::to_string(line_no) +
                                  " is not a 'key = value' pair");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw ValidationError("config: empty key on line " + std::to_string(line_no));
        }
        config.set(key, value);
    }
    return config;
}

Config load_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw IoError("config: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_config(buffer.str());
}

void apply_overrides(Config& config, std::span<const std::string> overrides) {
    for (const auto& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ValidationError("--set expects key=value, got '" + item + "'");
        }
        config.set(item.substr(0, eq), item.substr(eq + 1));
    }
}

} // namespace twmr::io

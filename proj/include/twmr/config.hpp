#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace twmr::io {

// Flat key-value run configuration: one `key = value` pair per line,
// '#' comments, repeated keys allowed (mode lists). Later assignments win
// for scalar lookups.
struct Config {
    std::vector<std::pair<std::string, std::string>> entries;

    void set(std::string key, std::string value);
    std::optional<std::string> get(const std::string& key) const;
    std::vector<std::string> get_all(const std::string& key) const;

    double get_double(const std::string& key, double fallback) const;
    double require_double(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    std::string get_string(const std::string& key, std::string fallback) const;
    bool has(const std::string& key) const { return get(key).has_value(); }
};

Config parse_config(const std::string& text);
Config load_config(const std::string& path);

// Applies `key=value` override strings (from repeated --set flags).
void apply_overrides(Config& config, std::span<const std::string> overrides);

} // namespace twmr::io

#pragma once

// Run configuration: a flat "key = value" file, overridden by command-line flags.

#include "irrk3/integer.hpp"
#include "irrk3/prime_field.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

namespace irrk3 {

enum class OutputFormat { json, csv, markdown };

inline OutputFormat parse_output_format(std::string_view s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    if (s == "md" || s == "markdown") return OutputFormat::markdown;
    throw DomainError("unknown output format '" + std::string(s) + "' (json, csv, md)");
}

constexpr std::string_view to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::json: return "json";
        case OutputFormat::csv: return "csv";
        case OutputFormat::markdown: return "md";
    }
    return "?";
}

struct RunConfig {
    std::uint64_t seed = 0;
    std::uint64_t field_size = ff::kDefaultFieldSize;
    OutputFormat output_format = OutputFormat::json;
    std::filesystem::path cache_path;  // empty: no cache
    std::int64_t genus_lo = 6;
    std::int64_t genus_hi = 62;
    int targets = 5;

    void validate() const {
        if (genus_lo < 2) throw DomainError("genus range must start at >= 2");
        if (genus_hi < genus_lo) throw DomainError("genus range is empty");
        if (field_size < ff::kMinFieldSize || !ff::is_prime(field_size))
            throw DomainError("field size must be a prime >= 101, got " + std::to_string(field_size));
        if (targets < 1) throw DomainError("targets must be >= 1");
    }
};

namespace detail {

inline std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
    std::istringstream in(value);
    T out{};
    if (!(in >> out) || !in.eof()) throw DomainError("config key '" + key + "': bad number '" + value + "'");
    return out;
}

}  // namespace detail

/// Applies the keys of a config stream on top of `base`.  Unknown keys are errors.
inline RunConfig parse_run_config(std::istream& in, RunConfig base = {}) {
    std::string line;
    for (int line_no = 1; std::getline(in, line); ++line_no) {
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DomainError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = detail::trim(std::string_view(line).substr(0, eq));
        const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
        if (key == "seed") base.seed = detail::parse_number<std::uint64_t>(key, value);
        else if (key == "field_size") base.field_size = detail::parse_number<std::uint64_t>(key, value);
        else if (key == "output_format") base.output_format = parse_output_format(value);
        else if (key == "cache_path") base.cache_path = value;
        else if (key == "genus_from") base.genus_lo = detail::parse_number<std::int64_t>(key, value);
        else if (key == "genus_to") base.genus_hi = detail::parse_number<std::int64_t>(key, value);
        else if (key == "targets") base.targets = detail::parse_number<int>(key, value);
        else throw DomainError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    return base;
}

inline RunConfig load_run_config(const std::filesystem::path& path, RunConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config file " + path.string());
    return parse_run_config(in, std::move(base));
}

}  // namespace irrk3

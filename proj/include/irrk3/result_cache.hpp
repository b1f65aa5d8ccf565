#pragma once

// Memo of deterministic payloads on disk.  Entries are keyed by
// (schema version, command, canonical inputs, seed); writes go to a
// temporary file that is renamed into place.

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

namespace irrk3 {

/// 64-bit FNV-1a; stable across platforms, unlike std::hash.
constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    static std::string make_key(std::string_view schema, std::string_view command, const nlohmann::json& inputs,
                                std::uint64_t seed) {
        std::string key;
        key.append(schema).append("|").append(command).append("|").append(inputs.dump()).append("|");
        key.append(std::to_string(seed));
        return key;
    }

    std::filesystem::path path_for(const std::string& key) const {
        std::ostringstream name;
        name << std::hex;
        name.width(16);
        name.fill('0');
        name << fnv1a64(key);
        return dir_ / (name.str() + ".json");
    }

    std::optional<nlohmann::json> load(const std::string& key) const {
        std::ifstream in(path_for(key));
        if (!in) return std::nullopt;
        try {
            auto entry = nlohmann::json::parse(in);
            // The full key guards against hash collisions.
            if (entry.at("key").get<std::string>() != key) return std::nullopt;
            return entry.at("payload");
        } catch (const nlohmann::json::exception&) {
            return std::nullopt;
        }
    }

    void store(const std::string& key, const nlohmann::json& payload) const {
        std::filesystem::create_directories(dir_);
        const auto final_path = path_for(key);
        auto tmp = final_path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            out << nlohmann::json{{"key", key}, {"payload", payload}}.dump();
            if (!out) throw std::runtime_error("cannot write cache entry " + tmp.string());
        }
        std::filesystem::rename(tmp, final_path);
    }

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

}  // namespace irrk3

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace socnet::cli {

struct InputRecord {
    std::string path;
    std::string sha256;
};

/// Everything needed to re-run a command and check its inputs.
struct RunManifest {
    std::string command;
    /// Arguments after the program name, as given.
    std::vector<std::string> arguments;
    std::vector<InputRecord> inputs;
    nlohmann::json flags = nlohmann::json::object();
    std::optional<std::uint64_t> seed;
    std::string tool_version;
    std::string timestamp;
    std::vector<std::string> outputs;
};

inline constexpr const char* kManifestFile = "manifest.json";

std::string sha256_file(const std::filesystem::path& path);

/// UTC, ISO 8601.
std::string utc_timestamp();

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

/// Atomic write of `dir`/manifest.json.
void write_manifest(const std::filesystem::path& dir, const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& file);

} // namespace socnet::cli

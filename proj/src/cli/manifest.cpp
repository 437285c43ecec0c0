#include "socnet/cli/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>

#include "socnet/cli/output.hpp"
#include "socnet/error.hpp"

namespace socnet::cli {

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw IoError("sha256 unavailable");
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    if (in.bad()) throw IoError("read failure on " + path.string());
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest;
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
    std::string hex;
    hex.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        char pair[3];
        std::snprintf(pair, sizeof pair, "%02x", digest[i]);
        hex += pair;
    }
    return hex;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json to_json(const RunManifest& m) {
    nlohmann::json inputs = nlohmann::json::array();
    for (const auto& i : m.inputs) inputs.push_back({{"path", i.path}, {"sha256", i.sha256}});
    return {{"command", m.command},
            {"arguments", m.arguments},
            {"inputs", inputs},
            {"flags", m.flags},
            {"seed", m.seed ? nlohmann::json(*m.seed) : nlohmann::json(nullptr)},
            {"tool_version", m.tool_version},
            {"timestamp", m.timestamp},
            {"outputs", m.outputs}};
}

RunManifest manifest_from_json(const nlohmann::json& j) {
    try {
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        m.arguments = j.at("arguments").get<std::vector<std::string>>();
        for (const auto& i : j.at("inputs")) m.inputs.push_back({i.at("path"), i.at("sha256")});
        m.flags = j.value("flags", nlohmann::json::object());
        if (j.contains("seed") && !j["seed"].is_null()) m.seed = j["seed"].get<std::uint64_t>();
        m.tool_version = j.value("tool_version", "");
        m.timestamp = j.value("timestamp", "");
        m.outputs = j.value("outputs", std::vector<std::string>{});
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid manifest: ") + e.what());
    }
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& m) {
    write_file_atomically(dir / kManifestFile, to_json(m).dump(2) + "\n");
}

RunManifest read_manifest(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open " + file.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(file.string() + ": " + e.what());
    }
    return manifest_from_json(j);
}

} // namespace socnet::cli

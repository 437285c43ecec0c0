#include "socnet/cli/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "socnet/error.hpp"

namespace socnet::cli {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw InvalidArgument("cannot format number");
    return std::string(buf, ptr);
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string stats_csv_header() { return "nodes,edges,density,HD,diameter,girth,CCG,APL,alpha"; }

std::string stats_csv_row(const GlobalStats& s) {
    std::ostringstream row;
    row << s.nodes << ',' << s.edges << ',' << format_double(s.density.value()) << ',' << s.highest_degree << ','
        << s.diameter << ',' << (s.girth ? std::to_string(*s.girth) : "acyclic") << ',' << format_double(s.ccg)
        << ',' << format_double(s.apl) << ',' << (s.alpha ? format_double(*s.alpha) : "");
    return row.str();
}

nlohmann::json to_json(const GlobalStats& s) {
    nlohmann::json j;
    j["nodes"] = s.nodes;
    j["edges"] = s.edges;
    j["density"] = s.density.value();
    j["HD"] = s.highest_degree;
    j["diameter"] = s.diameter;
    j["girth"] = s.girth ? nlohmann::json(*s.girth) : nlohmann::json("acyclic");
    j["CCG"] = s.ccg;
    j["ccg_mode"] = std::string(to_string(s.ccg_mode));
    j["APL"] = s.apl;
    j["alpha"] = s.alpha ? nlohmann::json(*s.alpha) : nlohmann::json(nullptr);
    return j;
}

std::string stats_table_header() {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-16s %8s %9s %9s %6s %8s %7s %6s %6s %7s", "dataset", "nodes", "edges", "density",
                  "HD", "diameter", "girth", "CCG", "APL", "alpha");
    return buf;
}

std::string stats_table_row(std::string_view name, const GlobalStats& s) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-16.*s %8zu %9zu %9.2f %6zu %8u %7s %6.2f %6.2f %7s",
                  static_cast<int>(name.size()), name.data(), s.nodes, s.edges, s.density.value(),
                  s.highest_degree, s.diameter, s.girth ? std::to_string(*s.girth).c_str() : "acyclic", s.ccg,
                  s.apl, s.alpha ? format_double(std::round(*s.alpha * 1000.0) / 1000.0).c_str() : "-");
    return buf;
}

std::string metric_csv(const Graph& g, const MetricVector& m) {
    std::string out = "node_label,value\n";
    for (NodeId v = 0; v < m.values.size(); ++v) {
        out += csv_field(g.label(v));
        out += ',';
        out += format_double(m.values[v]);
        out += '\n';
    }
    return out;
}

std::string distribution_csv(const BinnedDistribution& d) {
    std::string out = "bin,count\n";
    for (std::size_t k = 0; k < kBinCount; ++k) out += std::to_string(k) + ',' + std::to_string(d.bins[k]) + '\n';
    return out;
}

nlohmann::json to_json(const BinnedDistribution& d) {
    return {{"metric", std::string(to_string(d.metric))},
            {"bins", std::vector<std::uint64_t>(d.bins.begin(), d.bins.end())},
            {"total", d.total}};
}

nlohmann::json to_json(const RobustnessReport& r) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& d : r.per_sample) samples.push_back(std::vector<std::uint64_t>(d.bins.begin(), d.bins.end()));
    return {{"metric", std::string(to_string(r.metric))},
            {"threshold", r.threshold},
            {"average", std::vector<double>(r.average.begin(), r.average.end())},
            {"correlations", r.correlations},
            {"flagged", r.flagged},
            {"samples", samples}};
}

void write_file_atomically(const std::filesystem::path& target, std::string_view content) {
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw IoError("write failed on " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move output into place: " + target.string());
    }
}

OutputDir::OutputDir(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
}

void OutputDir::write(const std::string& name, std::string_view content) {
    write_file_atomically(dir_ / name, content);
    files_.push_back(name);
}

void OutputDir::rollback() noexcept {
    std::error_code ec;
    for (const auto& f : files_) std::filesystem::remove(dir_ / f, ec);
    files_.clear();
}

} // namespace socnet::cli

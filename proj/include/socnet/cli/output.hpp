#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "socnet/distributions.hpp"
#include "socnet/global_stats.hpp"
#include "socnet/graph.hpp"
#include "socnet/node_metrics.hpp"

namespace socnet::cli {

/// Shortest round-trip decimal form; identical bytes for identical doubles.
std::string format_double(double v);

/// CSV field, quoted when it contains a comma, quote or line break.
std::string csv_field(std::string_view s);

/// "nodes,edges,density,HD,diameter,girth,CCG,APL,alpha"
std::string stats_csv_header();
std::string stats_csv_row(const GlobalStats& s);
nlohmann::json to_json(const GlobalStats& s);

/// Human-readable one-line summary in the column order of the CSV.
std::string stats_table_header();
std::string stats_table_row(std::string_view name, const GlobalStats& s);

/// "node_label,value"
std::string metric_csv(const Graph& g, const MetricVector& m);

/// "bin,count"
std::string distribution_csv(const BinnedDistribution& d);
nlohmann::json to_json(const BinnedDistribution& d);
nlohmann::json to_json(const RobustnessReport& r);

/**
 * Files written into one output directory. Each file goes to a temporary
 * name first and is renamed into place, so readers never see partial files.
 * rollback() deletes everything written so far.
 */
class OutputDir {
public:
    explicit OutputDir(std::filesystem::path dir);

    const std::filesystem::path& path() const noexcept { return dir_; }
    void write(const std::string& name, std::string_view content);
    /// Written file names in write order.
    const std::vector<std::string>& files() const noexcept { return files_; }
    void rollback() noexcept;

private:
    std::filesystem::path dir_;
    std::vector<std::string> files_;
};

/// Writes `content` to `target` through a temporary sibling and a rename.
void write_file_atomically(const std::filesystem::path& target, std::string_view content);

} // namespace socnet::cli

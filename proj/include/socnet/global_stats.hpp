#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>

#include "socnet/graph.hpp"
#include "socnet/parallel.hpp"

namespace socnet {

/// Edges per node, kept as the exact ratio.
struct Density {
    std::uint64_t edges = 0;
    std::uint64_t nodes = 1;
    double value() const noexcept { return static_cast<double>(edges) / static_cast<double>(nodes); }
};

enum class ClusteringMode { MeanLocal, Transitivity };

std::string_view to_string(ClusteringMode m);
std::optional<ClusteringMode> parse_clustering_mode(std::string_view name);

Density density(const Graph& g);
std::size_t highest_degree(const Graph& g);

/// Largest finite distance. Disconnected graphs use reachable pairs only.
std::uint32_t diameter(const Graph& g, Workers workers = {});

/// Shortest cycle length; nullopt means the graph is acyclic.
std::optional<std::uint32_t> girth(const Graph& g, Workers workers = {});

double global_clustering(const Graph& g, ClusteringMode mode = ClusteringMode::MeanLocal);

/// Mean distance over unordered reachable pairs.
double average_path_length(const Graph& g, Workers workers = {});

/// degree -> number of nodes with that degree (degree 0 omitted).
std::map<std::uint64_t, std::uint64_t> degree_histogram(const Graph& g);

/// Least-squares slope of log(count) against log(degree), negated.
/// Needs at least two distinct degrees >= 1 with nonzero count.
double fit_power_law_alpha(const std::map<std::uint64_t, std::uint64_t>& histogram);

struct GlobalStats {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    Density density;
    std::size_t highest_degree = 0;
    std::uint32_t diameter = 0;
    std::optional<std::uint32_t> girth;  // nullopt: acyclic
    ClusteringMode ccg_mode = ClusteringMode::MeanLocal;
    double ccg = 0.0;
    double apl = 0.0;
    std::optional<double> alpha;  // nullopt when the degree histogram has too little support
};

/// All Table-style statistics in one pass over the all-pairs distances.
GlobalStats compute_global_stats(const Graph& g, ClusteringMode mode = ClusteringMode::MeanLocal,
                                 Workers workers = {});

} // namespace socnet

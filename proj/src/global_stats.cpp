#include "socnet/global_stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "socnet/error.hpp"
#include "socnet/node_metrics.hpp"
#include "socnet/paths.hpp"

namespace socnet {

namespace {

void require_nodes(const Graph& g) {
    if (g.empty()) throw InvalidArgument("empty graph");
}

void require_pair(const Graph& g) {
    if (g.node_count() < 2) throw InvalidArgument("need at least 2 nodes");
}

struct PathTotals {
    std::uint32_t diameter = 0;
    std::uint64_t distance_sum = 0;
    std::uint64_t ordered_pairs = 0;
};

PathTotals path_totals(const Graph& g, Workers workers) {
    PathTotals t;
    for (const auto& s : summarize_distances(g, workers)) {
        t.diameter = std::max(t.diameter, s.max_distance);
        t.distance_sum += s.distance_sum;
        t.ordered_pairs += s.reached;
    }
    if (t.ordered_pairs == 0) throw ComputeError("no reachable pairs");
    return t;
}

} // namespace

std::string_view to_string(ClusteringMode m) {
    return m == ClusteringMode::MeanLocal ? "mean-local" : "transitivity";
}

std::optional<ClusteringMode> parse_clustering_mode(std::string_view name) {
    if (name == "mean-local") return ClusteringMode::MeanLocal;
    if (name == "transitivity") return ClusteringMode::Transitivity;
    return std::nullopt;
}

Density density(const Graph& g) {
    require_nodes(g);
    return {g.edge_count(), g.node_count()};
}

std::size_t highest_degree(const Graph& g) {
    require_nodes(g);
    std::size_t best = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) best = std::max(best, g.degree(v));
    return best;
}

std::uint32_t diameter(const Graph& g, Workers workers) {
    require_pair(g);
    return path_totals(g, workers).diameter;
}

std::optional<std::uint32_t> girth(const Graph& g, Workers workers) {
    require_nodes(g);
    return shortest_cycle_length(g, workers);
}

double global_clustering(const Graph& g, ClusteringMode mode) {
    require_nodes(g);
    if (mode == ClusteringMode::MeanLocal) {
        const auto cc = local_clustering_vector(g);
        double sum = 0.0;
        for (double x : cc.values) sum += x;
        return sum / static_cast<double>(g.node_count());
    }
    // Sum of per-node triangle counts is 3 x triangles.
    const auto triangles = triangles_per_node(g);
    std::uint64_t closed = 0, triples = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const std::uint64_t k = g.degree(v);
        closed += triangles[v];
        if (k >= 2) triples += k * (k - 1) / 2;
    }
    if (triples == 0) throw ComputeError("no triples");
    return static_cast<double>(closed) / static_cast<double>(triples);
}

double average_path_length(const Graph& g, Workers workers) {
    require_pair(g);
    const auto t = path_totals(g, workers);
    return static_cast<double>(t.distance_sum) / static_cast<double>(t.ordered_pairs);
}

std::map<std::uint64_t, std::uint64_t> degree_histogram(const Graph& g) {
    std::map<std::uint64_t, std::uint64_t> hist;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (g.degree(v) > 0) ++hist[g.degree(v)];
    return hist;
}

double fit_power_law_alpha(const std::map<std::uint64_t, std::uint64_t>& histogram) {
    std::vector<double> xs, ys;
    for (const auto& [degree, count] : histogram) {
        if (degree < 1 || count == 0) continue;
        xs.push_back(std::log(static_cast<double>(degree)));
        ys.push_back(std::log(static_cast<double>(count)));
    }
    if (xs.size() < 2) throw ComputeError("insufficient support for power-law fit");

    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    return -sxy / sxx;
}

GlobalStats compute_global_stats(const Graph& g, ClusteringMode mode, Workers workers) {
    require_pair(g);
    GlobalStats s;
    s.nodes = g.node_count();
    s.edges = g.edge_count();
    s.density = density(g);
    s.highest_degree = highest_degree(g);
    const auto paths = path_totals(g, workers);
    s.diameter = paths.diameter;
    s.apl = static_cast<double>(paths.distance_sum) / static_cast<double>(paths.ordered_pairs);
    s.girth = girth(g, workers);
    s.ccg_mode = mode;
    s.ccg = global_clustering(g, mode);
    try {
        s.alpha = fit_power_law_alpha(degree_histogram(g));
    } catch (const ComputeError&) {
        s.alpha.reset();
    }
    return s;
}

} // namespace socnet

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "socnet/graph.hpp"
#include "socnet/parallel.hpp"

namespace socnet {

enum class Metric { Degree, LocalClustering, Strength, Betweenness, Eccentricity, Closeness };

inline constexpr Metric kAllMetrics[] = {Metric::Degree,      Metric::LocalClustering, Metric::Strength,
                                         Metric::Betweenness, Metric::Eccentricity,    Metric::Closeness};

/// "degree", "local-cc", "strength", "betweenness", "eccentricity", "closeness".
std::string_view to_string(Metric m);
std::optional<Metric> parse_metric(std::string_view name);

enum class Scale { Raw, Normalized01 };

/// Per-node values of one metric; values[v] belongs to node v of the source graph.
struct MetricVector {
    Metric metric;
    Scale scale = Scale::Raw;
    std::vector<double> values;
};

MetricVector degree_vector(const Graph& g);

/// Triangles through each node.
std::vector<std::uint64_t> triangles_per_node(const Graph& g);

/// 2 e_n / (k_n (k_n - 1)), with 0 for nodes of degree below 2.
MetricVector local_clustering_vector(const Graph& g);

/// Ingredients of the strength of edge {u, v}. With W the common
/// neighbourhood and M_u, M_v the exclusive ones:
///   cycles3 = |W|
///   cycles4 = e(M_u, M_v) + e(W, M_u) + e(W, M_v) + e(W)
///   max     = |W| + |M_u||M_v| + |W||M_u| + |W||M_v| + |W|(|W|-1)/2
struct StrengthCounts {
    std::uint64_t cycles3 = 0;
    std::uint64_t cycles4 = 0;
    std::uint64_t max = 0;

    /// (cycles3 + cycles4) / max, or 0 when max is 0.
    double strength() const noexcept {
        return max == 0 ? 0.0 : static_cast<double>(cycles3 + cycles4) / static_cast<double>(max);
    }
};

/// Throws InvalidArgument when {u, v} is not an edge.
StrengthCounts edge_strength_counts(const Graph& g, NodeId u, NodeId v);
double edge_strength(const Graph& g, NodeId u, NodeId v);

/// Mean strength of the incident edges; 0 for isolated nodes.
MetricVector strength_vector(const Graph& g, Workers workers = {});

/// Sum over unordered pairs {s, t} not containing v of sigma_st(v) / sigma_st.
/// With `normalized`, divided by (n-1)(n-2)/2 and tagged Normalized01.
MetricVector betweenness_vector(const Graph& g, bool normalized, Workers workers = {});

/// 1 / max reachable distance; 0 for isolated nodes.
MetricVector eccentricity_vector(const Graph& g, Workers workers = {});

/// 1 / sum of reachable distances; 0 for isolated nodes.
MetricVector closeness_vector(const Graph& g, Workers workers = {});

/// Raw values of any metric.
MetricVector compute_metric(const Graph& g, Metric m, Workers workers = {});

/**
 * Maps a raw vector into [0, 1]: degree / (n-1), betweenness / ((n-1)(n-2)/2),
 * closeness * (n-1); clustering, strength and eccentricity pass through.
 * Results are clamped to [0, 1]. Throws for n < 2 or a vector that is not raw.
 */
MetricVector normalize_01(const MetricVector& m, const Graph& g);

MetricVector compute_normalized_metric(const Graph& g, Metric m, Workers workers = {});

/**
 * Brandes dependency accumulation from a single source. Adds, for every node
 * v != s, the sum over targets t of sigma_st(v) / sigma_st into `acc`
 * (ordered pairs from s). Generic in the scalar so tests can run it on exact
 * rationals.
 */
template <class Scalar>
class BrandesAccumulator {
public:
    explicit BrandesAccumulator(std::size_t n)
        : dist_(n, kUnseen), sigma_(n, Scalar(0)), delta_(n, Scalar(0)), order_(n) {}

    void add_source(const Graph& g, NodeId s, std::span<Scalar> acc) {
        std::size_t tail = 0;
        dist_[s] = 0;
        sigma_[s] = Scalar(1);
        order_[tail++] = s;
        for (std::size_t head = 0; head < tail; ++head) {
            const NodeId u = order_[head];
            for (NodeId w : g.neighbors(u)) {
                if (dist_[w] == kUnseen) {
                    dist_[w] = dist_[u] + 1;
                    order_[tail++] = w;
                }
                if (dist_[w] == dist_[u] + 1) sigma_[w] += sigma_[u];
            }
        }
        // Reverse BFS order: predecessors of w are the neighbours one level closer.
        for (std::size_t i = tail; i-- > 1;) {
            const NodeId w = order_[i];
            const Scalar coeff = (Scalar(1) + delta_[w]) / sigma_[w];
            for (NodeId u : g.neighbors(w))
                if (dist_[u] + 1 == dist_[w]) delta_[u] += sigma_[u] * coeff;
            acc[w] += delta_[w];
        }
        for (std::size_t i = 0; i < tail; ++i) {
            const NodeId v = order_[i];
            dist_[v] = kUnseen;
            sigma_[v] = Scalar(0);
            delta_[v] = Scalar(0);
        }
    }

private:
    static constexpr std::uint32_t kUnseen = 0xffffffffu;
    std::vector<std::uint32_t> dist_;
    std::vector<Scalar> sigma_;
    std::vector<Scalar> delta_;
    std::vector<NodeId> order_;
};

/// Unnormalized unordered-pair betweenness in any scalar type, single-threaded.
template <class Scalar>
std::vector<Scalar> betweenness_exact(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<Scalar> acc(n, Scalar(0));
    BrandesAccumulator<Scalar> brandes(n);
    for (NodeId s = 0; s < n; ++s) brandes.add_source(g, s, acc);
    for (auto& x : acc) x /= Scalar(2);
    return acc;
}

} // namespace socnet

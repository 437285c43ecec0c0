#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace socnet {

using NodeId = std::uint32_t;

struct Edge {
    NodeId u;
    NodeId v;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/**
 * Immutable undirected simple graph in compressed adjacency form.
 *
 * Node indices are dense in [0, node_count()). Every adjacency list is sorted,
 * free of duplicates and self-loops, and symmetric. Optional labels keep the
 * identifiers the nodes had in the input file (or in the graph a sample was
 * drawn from).
 */
class Graph {
public:
    Graph() = default;

    /// Builds from an arbitrary edge list over [0, node_count). Self-loops are
    /// dropped and duplicates merged. `labels` must be empty or have node_count entries.
    static Graph from_edges(std::size_t node_count, std::span<const Edge> edges,
                            std::vector<std::string> labels = {});

    std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return targets_.size() / 2; }
    bool empty() const noexcept { return node_count() == 0; }

    std::span<const NodeId> neighbors(NodeId v) const noexcept {
        return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
    }
    std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(NodeId u, NodeId v) const;

    bool has_labels() const noexcept { return !labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    /// Original identifier, or the decimal index when the graph carries no labels.
    std::string label(NodeId v) const;

    /// Every edge once, as (u, v) with u < v, in ascending order.
    std::vector<Edge> edges() const;

private:
    std::vector<std::size_t> offsets_;
    std::vector<NodeId> targets_;
    std::vector<std::string> labels_;
};

/**
 * Incremental construction keyed by string identifiers. Indices are assigned
 * in order of first appearance; self-loops are counted and dropped, repeated
 * or reciprocal arcs are merged when build() runs.
 */
class GraphBuilder {
public:
    NodeId add_node(std::string_view label);
    void add_edge(NodeId u, NodeId v);
    void add_edge(std::string_view a, std::string_view b) {
        const NodeId u = add_node(a);  // sequenced so indices follow first appearance
        add_edge(u, add_node(b));
    }

    std::size_t node_count() const noexcept { return labels_.size(); }
    std::size_t self_loops() const noexcept { return self_loops_; }
    std::size_t arcs() const noexcept { return arcs_.size(); }

    Graph build() &&;

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<Edge> arcs_;
    std::size_t self_loops_ = 0;
};

/// Shortest-path distance in hops, or the explicit unreachable marker.
class Distance {
public:
    constexpr Distance() = default;
    constexpr explicit Distance(std::uint32_t hops) : hops_(hops) {}
    static constexpr Distance unreachable() { return Distance{}; }

    constexpr bool reachable() const noexcept { return hops_ != kNone; }
    /// Precondition: reachable().
    constexpr std::uint32_t hops() const noexcept { return hops_; }

    friend constexpr bool operator==(Distance, Distance) = default;

private:
    static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t hops_ = kNone;
};

std::vector<Distance> bfs_distances(const Graph& g, NodeId source);

/// Component id per node (ids in order of smallest member) and the number of components.
std::pair<std::vector<std::uint32_t>, std::size_t> connected_components(const Graph& g);

bool is_connected(const Graph& g);

/// Induced subgraph on `nodes` (any order, no duplicates). The new index of
/// nodes[i] is its rank among the selected original indices, so output is
/// independent of the order of `nodes`. Labels carry over.
Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// Largest component as an induced subgraph. Ties go to the component whose
/// smallest node index is lowest.
Graph largest_connected_component(const Graph& g);

} // namespace socnet

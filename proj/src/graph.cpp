#include "socnet/graph.hpp"

#include <algorithm>
#include <numeric>

#include "socnet/error.hpp"

namespace socnet {

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges,
                        std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != node_count)
        throw InvalidArgument("label count does not match node count");
    if (node_count > std::numeric_limits<NodeId>::max())
        throw InvalidArgument("too many nodes");

    // Counting sort into both directions, then per-list sort + unique.
    std::vector<std::size_t> count(node_count + 1, 0);
    for (const auto& e : edges) {
        if (e.u >= node_count || e.v >= node_count)
            throw InvalidArgument("edge endpoint out of range");
        if (e.u == e.v) continue;
        ++count[e.u + 1];
        ++count[e.v + 1];
    }
    std::partial_sum(count.begin(), count.end(), count.begin());
    std::vector<NodeId> raw(count.back());
    std::vector<std::size_t> fill(count.begin(), count.end() - 1);
    for (const auto& e : edges) {
        if (e.u == e.v) continue;
        raw[fill[e.u]++] = e.v;
        raw[fill[e.v]++] = e.u;
    }

    Graph g;
    g.offsets_.assign(node_count + 1, 0);
    g.targets_.reserve(raw.size());
    for (std::size_t v = 0; v < node_count; ++v) {
        auto first = raw.begin() + static_cast<std::ptrdiff_t>(count[v]);
        auto last = raw.begin() + static_cast<std::ptrdiff_t>(count[v + 1]);
        std::sort(first, last);
        last = std::unique(first, last);
        g.targets_.insert(g.targets_.end(), first, last);
        g.offsets_[v + 1] = g.targets_.size();
    }
    g.targets_.shrink_to_fit();
    g.labels_ = std::move(labels);
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (u >= node_count() || v >= node_count()) return false;
    auto a = neighbors(u);
    auto b = neighbors(v);
    // search the shorter list
    if (b.size() < a.size()) return std::binary_search(b.begin(), b.end(), u);
    return std::binary_search(a.begin(), a.end(), v);
}

std::string Graph::label(NodeId v) const {
    return labels_.empty() ? std::to_string(v) : labels_[v];
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (NodeId u = 0; u < node_count(); ++u)
        for (NodeId v : neighbors(u))
            if (u < v) out.push_back({u, v});
    return out;
}

NodeId GraphBuilder::add_node(std::string_view label) {
    auto [it, inserted] = index_.try_emplace(std::string(label), static_cast<NodeId>(labels_.size()));
    if (inserted) labels_.emplace_back(label);
    return it->second;
}

void GraphBuilder::add_edge(NodeId u, NodeId v) {
    if (u >= labels_.size() || v >= labels_.size())
        throw InvalidArgument("edge endpoint out of range");
    if (u == v) {
        ++self_loops_;
        return;
    }
    arcs_.push_back({u, v});
}

Graph GraphBuilder::build() && {
    const std::size_t n = labels_.size();
    index_.clear();
    return Graph::from_edges(n, arcs_, std::move(labels_));
}

std::vector<Distance> bfs_distances(const Graph& g, NodeId source) {
    if (source >= g.node_count()) throw InvalidArgument("source node out of range");
    std::vector<Distance> dist(g.node_count());
    std::vector<NodeId> queue;
    queue.reserve(g.node_count());
    dist[source] = Distance{0};
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        const Distance next{dist[u].hops() + 1};
        for (NodeId w : g.neighbors(u)) {
            if (dist[w].reachable()) continue;
            dist[w] = next;
            queue.push_back(w);
        }
    }
    return dist;
}

std::pair<std::vector<std::uint32_t>, std::size_t> connected_components(const Graph& g) {
    constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
    const std::size_t n = g.node_count();
    std::vector<std::uint32_t> comp(n, kUnset);
    std::vector<NodeId> stack;
    std::uint32_t next = 0;
    for (NodeId s = 0; s < n; ++s) {
        if (comp[s] != kUnset) continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            for (NodeId w : g.neighbors(u)) {
                if (comp[w] != kUnset) continue;
                comp[w] = next;
                stack.push_back(w);
            }
        }
        ++next;
    }
    return {std::move(comp), next};
}

bool is_connected(const Graph& g) {
    return g.node_count() <= 1 || connected_components(g).second == 1;
}

Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
    std::vector<NodeId> sorted(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidArgument("duplicate node in induced subgraph selection");
    if (!sorted.empty() && sorted.back() >= g.node_count())
        throw InvalidArgument("node out of range in induced subgraph selection");

    constexpr auto kAbsent = std::numeric_limits<NodeId>::max();
    std::vector<NodeId> remap(g.node_count(), kAbsent);
    for (std::size_t i = 0; i < sorted.size(); ++i) remap[sorted[i]] = static_cast<NodeId>(i);

    std::vector<Edge> edges;
    std::vector<std::string> labels;
    labels.reserve(sorted.size());
    for (NodeId old_u : sorted) {
        labels.push_back(g.label(old_u));
        for (NodeId old_w : g.neighbors(old_u))
            if (old_u < old_w && remap[old_w] != kAbsent) edges.push_back({remap[old_u], remap[old_w]});
    }
    return Graph::from_edges(sorted.size(), edges, std::move(labels));
}

Graph largest_connected_component(const Graph& g) {
    if (g.empty()) throw InvalidArgument("empty graph");
    auto [comp, count] = connected_components(g);
    if (count == 1) return g;
    std::vector<std::size_t> sizes(count, 0);
    for (auto c : comp) ++sizes[c];
    // Component ids follow the smallest member, so the first maximum wins ties.
    const auto best = static_cast<std::uint32_t>(
        std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    std::vector<NodeId> keep;
    keep.reserve(sizes[best]);
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (comp[v] == best) keep.push_back(v);
    return induced_subgraph(g, keep);
}

} // namespace socnet

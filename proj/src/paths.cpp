#include "socnet/paths.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

namespace socnet {

namespace {

constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();

struct BfsScratch {
    explicit BfsScratch(std::size_t n) : dist(n, kUnseen), parent(n), queue(n) {}
    std::vector<std::uint32_t> dist;
    std::vector<NodeId> parent;
    std::vector<NodeId> queue;
};

SourceSummary summarize_one(const Graph& g, NodeId s, BfsScratch& scratch) {
    auto& dist = scratch.dist;
    auto& queue = scratch.queue;
    SourceSummary out;
    std::size_t tail = 0;
    dist[s] = 0;
    queue[tail++] = s;
    for (std::size_t head = 0; head < tail; ++head) {
        const NodeId u = queue[head];
        const std::uint32_t next = dist[u] + 1;
        for (NodeId w : g.neighbors(u)) {
            if (dist[w] != kUnseen) continue;
            dist[w] = next;
            queue[tail++] = w;
            out.distance_sum += next;
            out.max_distance = next;
        }
    }
    out.reached = static_cast<std::uint32_t>(tail - 1);
    for (std::size_t i = 0; i < tail; ++i) dist[queue[i]] = kUnseen;
    return out;
}

// Shortest cycle through the BFS tree rooted at s, cut off once it cannot beat `bound`.
std::uint32_t cycle_from(const Graph& g, NodeId s, std::uint32_t bound, BfsScratch& scratch) {
    auto& dist = scratch.dist;
    auto& parent = scratch.parent;
    auto& queue = scratch.queue;
    std::uint32_t best = bound;
    std::size_t tail = 0;
    dist[s] = 0;
    parent[s] = s;
    queue[tail++] = s;
    for (std::size_t head = 0; head < tail; ++head) {
        const NodeId u = queue[head];
        if (2 * dist[u] >= best) break;
        for (NodeId w : g.neighbors(u)) {
            if (dist[w] == kUnseen) {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue[tail++] = w;
            } else if (parent[u] != w) {
                best = std::min(best, dist[u] + dist[w] + 1);
            }
        }
    }
    for (std::size_t i = 0; i < tail; ++i) dist[queue[i]] = kUnseen;
    return best;
}

} // namespace

std::vector<SourceSummary> summarize_distances(const Graph& g, Workers workers) {
    const std::size_t n = g.node_count();
    std::vector<SourceSummary> out(n);
    for_each_block(n, workers, [&](std::size_t, std::size_t begin, std::size_t end) {
        BfsScratch scratch(n);
        for (std::size_t s = begin; s < end; ++s) out[s] = summarize_one(g, static_cast<NodeId>(s), scratch);
    });
    return out;
}

std::optional<std::uint32_t> shortest_cycle_length(const Graph& g, Workers workers) {
    const std::size_t n = g.node_count();
    // Forests have no cycle; the component count settles that without any BFS.
    if (g.edge_count() + connected_components(g).second == n) return std::nullopt;

    std::atomic<std::uint32_t> best{kUnseen};
    for_each_block(n, workers, [&](std::size_t, std::size_t begin, std::size_t end) {
        BfsScratch scratch(n);
        for (std::size_t s = begin; s < end; ++s) {
            const auto current = best.load();
            if (current == 3) return;
            const auto found = cycle_from(g, static_cast<NodeId>(s), current, scratch);
            auto seen = best.load();
            while (found < seen && !best.compare_exchange_weak(seen, found)) {}
        }
    });
    return best.load();
}

} // namespace socnet

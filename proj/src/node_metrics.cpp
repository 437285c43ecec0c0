#include "socnet/node_metrics.hpp"

#include <algorithm>
#include <numeric>

#include "socnet/error.hpp"
#include "socnet/paths.hpp"

namespace socnet {

std::string_view to_string(Metric m) {
    switch (m) {
    case Metric::Degree: return "degree";
    case Metric::LocalClustering: return "local-cc";
    case Metric::Strength: return "strength";
    case Metric::Betweenness: return "betweenness";
    case Metric::Eccentricity: return "eccentricity";
    case Metric::Closeness: return "closeness";
    }
    return "degree";
}

std::optional<Metric> parse_metric(std::string_view name) {
    for (Metric m : kAllMetrics)
        if (to_string(m) == name) return m;
    return std::nullopt;
}

MetricVector degree_vector(const Graph& g) {
    MetricVector out{Metric::Degree, Scale::Raw, std::vector<double>(g.node_count())};
    for (NodeId v = 0; v < g.node_count(); ++v) out.values[v] = static_cast<double>(g.degree(v));
    return out;
}

std::vector<std::uint64_t> triangles_per_node(const Graph& g) {
    const std::size_t n = g.node_count();
    // Orient every edge towards the endpoint of higher (degree, index) rank;
    // each triangle is then found exactly once from its lowest-ranked corner.
    auto higher = [&](NodeId a, NodeId b) {
        const auto da = g.degree(a), db = g.degree(b);
        return db > da || (db == da && b > a);
    };
    std::vector<std::size_t> offsets(n + 1, 0);
    std::vector<NodeId> forward;
    forward.reserve(g.edge_count());
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId w : g.neighbors(u))
            if (higher(u, w)) forward.push_back(w);
        offsets[u + 1] = forward.size();
    }
    auto out_of = [&](NodeId u) {
        return std::span<const NodeId>(forward.data() + offsets[u], forward.data() + offsets[u + 1]);
    };

    std::vector<std::uint64_t> count(n, 0);
    for (NodeId u = 0; u < n; ++u) {
        const auto ou = out_of(u);
        for (NodeId v : ou) {
            const auto ov = out_of(v);
            auto a = ou.begin();
            auto b = ov.begin();
            while (a != ou.end() && b != ov.end()) {
                if (*a < *b) {
                    ++a;
                } else if (*b < *a) {
                    ++b;
                } else {
                    ++count[u];
                    ++count[v];
                    ++count[*a];
                    ++a;
                    ++b;
                }
            }
        }
    }
    return count;
}

MetricVector local_clustering_vector(const Graph& g) {
    const auto triangles = triangles_per_node(g);
    MetricVector out{Metric::LocalClustering, Scale::Raw, std::vector<double>(g.node_count(), 0.0)};
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto k = static_cast<double>(g.degree(v));
        if (k >= 2) out.values[v] = 2.0 * static_cast<double>(triangles[v]) / (k * (k - 1.0));
    }
    return out;
}

namespace {

enum Tag : std::uint8_t { kNone = 0, kOnlyU = 1, kOnlyV = 2, kCommon = 3 };

/// Reusable membership marks for one edge's neighbourhood partition.
class StrengthScratch {
public:
    explicit StrengthScratch(std::size_t n) : stamp_(n, 0), tag_(n, kNone) {}

    StrengthCounts count(const Graph& g, NodeId u, NodeId v) {
        if (++epoch_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            epoch_ = 1;
        }
        members_.clear();
        for (NodeId x : g.neighbors(u)) {
            if (x == v) continue;
            mark(x, kOnlyU);
            members_.push_back(x);
        }
        for (NodeId x : g.neighbors(v)) {
            if (x == u) continue;
            if (tag(x) == kOnlyU) {
                tag_[x] = kCommon;
            } else {
                mark(x, kOnlyV);
                members_.push_back(x);
            }
        }

        std::uint64_t common = 0, only_u = 0, only_v = 0;
        for (NodeId x : members_) {
            switch (tag_[x]) {
            case kCommon: ++common; break;
            case kOnlyU: ++only_u; break;
            default: ++only_v; break;
            }
        }

        // Unordered pairs {x, y} in the partition that close a 4-cycle with u-v.
        std::uint64_t closing = 0;
        for (NodeId x : members_) {
            const auto tx = tag_[x];
            auto adj = g.neighbors(x);
            if (adj.size() <= members_.size()) {
                for (NodeId y : adj)
                    if (y > x && closes(tx, tag(y))) ++closing;
            } else {
                for (NodeId y : members_)
                    if (y > x && closes(tx, tag_[y]) && std::binary_search(adj.begin(), adj.end(), y)) ++closing;
            }
        }

        StrengthCounts c;
        c.cycles3 = common;
        c.cycles4 = closing;
        c.max = common + only_u * only_v + common * only_u + common * only_v + (common > 0 ? common * (common - 1) / 2 : 0);
        return c;
    }

private:
    void mark(NodeId x, Tag t) {
        stamp_[x] = epoch_;
        tag_[x] = t;
    }
    Tag tag(NodeId x) const { return stamp_[x] == epoch_ ? static_cast<Tag>(tag_[x]) : kNone; }

    // Valid pairs: one side adjacent to u, the other adjacent to v.
    static bool closes(std::uint8_t a, std::uint8_t b) {
        if (a == kNone || b == kNone) return false;
        if (a == kCommon || b == kCommon) return true;
        return a != b;
    }

    std::vector<std::uint32_t> stamp_;
    std::vector<std::uint8_t> tag_;
    std::vector<NodeId> members_;
    std::uint32_t epoch_ = 0;
};

} // namespace

StrengthCounts edge_strength_counts(const Graph& g, NodeId u, NodeId v) {
    if (!g.has_edge(u, v)) throw InvalidArgument("not an edge: " + std::to_string(u) + "-" + std::to_string(v));
    StrengthScratch scratch(g.node_count());
    return scratch.count(g, u, v);
}

double edge_strength(const Graph& g, NodeId u, NodeId v) { return edge_strength_counts(g, u, v).strength(); }

MetricVector strength_vector(const Graph& g, Workers workers) {
    const std::size_t n = g.node_count();
    // Strength of the i-th stored half-edge u -> adjacency(u)[i]; filled for u < w and mirrored.
    std::vector<double> half(2 * g.edge_count(), 0.0);
    std::vector<std::size_t> start(n + 1, 0);
    for (NodeId u = 0; u < n; ++u) start[u + 1] = start[u] + g.degree(u);

    for_each_block(n, workers, [&](std::size_t, std::size_t begin, std::size_t end) {
        StrengthScratch scratch(n);
        for (std::size_t u = begin; u < end; ++u) {
            const auto adj = g.neighbors(static_cast<NodeId>(u));
            for (std::size_t i = 0; i < adj.size(); ++i)
                if (u < adj[i]) half[start[u] + i] = scratch.count(g, static_cast<NodeId>(u), adj[i]).strength();
        }
    });
    for (NodeId u = 0; u < n; ++u) {
        const auto adj = g.neighbors(u);
        for (std::size_t i = 0; i < adj.size(); ++i) {
            const NodeId w = adj[i];
            if (w < u) {
                const auto back = g.neighbors(w);
                const auto j = static_cast<std::size_t>(std::lower_bound(back.begin(), back.end(), u) - back.begin());
                half[start[u] + i] = half[start[w] + j];
            }
        }
    }

    MetricVector out{Metric::Strength, Scale::Raw, std::vector<double>(n, 0.0)};
    for (NodeId u = 0; u < n; ++u) {
        const auto k = g.degree(u);
        if (k == 0) continue;
        double sum = 0.0;
        for (std::size_t i = start[u]; i < start[u + 1]; ++i) sum += half[i];
        out.values[u] = sum / static_cast<double>(k);
    }
    return out;
}

MetricVector betweenness_vector(const Graph& g, bool normalized, Workers workers) {
    const std::size_t n = g.node_count();
    // Per-block partial sums, reduced in block order for worker-independent rounding.
    std::vector<std::vector<double>> partial(block_count(n));
    for_each_block(n, workers, [&](std::size_t block, std::size_t begin, std::size_t end) {
        std::vector<double> acc(n, 0.0);
        BrandesAccumulator<double> brandes(n);
        for (std::size_t s = begin; s < end; ++s) brandes.add_source(g, static_cast<NodeId>(s), acc);
        partial[block] = std::move(acc);
    });

    MetricVector out{Metric::Betweenness, Scale::Raw, std::vector<double>(n, 0.0)};
    for (const auto& p : partial)
        for (std::size_t v = 0; v < n; ++v) out.values[v] += p[v];
    for (auto& x : out.values) x /= 2.0;
    return normalized ? normalize_01(out, g) : out;
}

MetricVector eccentricity_vector(const Graph& g, Workers workers) {
    const auto summary = summarize_distances(g, workers);
    MetricVector out{Metric::Eccentricity, Scale::Raw, std::vector<double>(g.node_count(), 0.0)};
    for (std::size_t v = 0; v < summary.size(); ++v)
        if (summary[v].max_distance > 0) out.values[v] = 1.0 / static_cast<double>(summary[v].max_distance);
    return out;
}

MetricVector closeness_vector(const Graph& g, Workers workers) {
    const auto summary = summarize_distances(g, workers);
    MetricVector out{Metric::Closeness, Scale::Raw, std::vector<double>(g.node_count(), 0.0)};
    for (std::size_t v = 0; v < summary.size(); ++v)
        if (summary[v].distance_sum > 0) out.values[v] = 1.0 / static_cast<double>(summary[v].distance_sum);
    return out;
}

MetricVector compute_metric(const Graph& g, Metric m, Workers workers) {
    switch (m) {
    case Metric::Degree: return degree_vector(g);
    case Metric::LocalClustering: return local_clustering_vector(g);
    case Metric::Strength: return strength_vector(g, workers);
    case Metric::Betweenness: return betweenness_vector(g, false, workers);
    case Metric::Eccentricity: return eccentricity_vector(g, workers);
    case Metric::Closeness: return closeness_vector(g, workers);
    }
    throw InvalidArgument("unknown metric");
}

MetricVector normalize_01(const MetricVector& m, const Graph& g) {
    if (m.scale != Scale::Raw) throw InvalidArgument("metric vector is already normalized");
    if (m.values.size() != g.node_count()) throw InvalidArgument("metric vector does not match graph");
    const std::size_t n = g.node_count();
    if (n < 2) throw InvalidArgument("normalization needs at least 2 nodes");

    const double n1 = static_cast<double>(n - 1);
    double factor = 1.0;
    switch (m.metric) {
    case Metric::Degree: factor = 1.0 / n1; break;
    case Metric::Betweenness: factor = n >= 3 ? 2.0 / (n1 * static_cast<double>(n - 2)) : 0.0; break;
    case Metric::Closeness: factor = n1; break;
    case Metric::LocalClustering:
    case Metric::Strength:
    case Metric::Eccentricity: break;
    }
    MetricVector out{m.metric, Scale::Normalized01, m.values};
    for (auto& x : out.values) x = std::clamp(x * factor, 0.0, 1.0);
    return out;
}

MetricVector compute_normalized_metric(const Graph& g, Metric m, Workers workers) {
    return normalize_01(compute_metric(g, m, workers), g);
}

} // namespace socnet

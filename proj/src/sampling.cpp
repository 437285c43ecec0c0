#include "socnet/sampling.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "socnet/error.hpp"

namespace socnet {

std::string_view to_string(SamplingMethod m) {
    switch (m) {
    case SamplingMethod::Node: return "node";
    case SamplingMethod::Link: return "link";
    case SamplingMethod::Snowball: return "snowball";
    }
    return "snowball";
}

std::optional<SamplingMethod> parse_sampling_method(std::string_view name) {
    if (name == "node") return SamplingMethod::Node;
    if (name == "link") return SamplingMethod::Link;
    if (name == "snowball") return SamplingMethod::Snowball;
    return std::nullopt;
}

std::string_view to_string(OnExhaustion e) { return e == OnExhaustion::Error ? "error" : "reseed"; }

std::optional<OnExhaustion> parse_on_exhaustion(std::string_view name) {
    if (name == "error") return OnExhaustion::Error;
    if (name == "reseed") return OnExhaustion::Reseed;
    return std::nullopt;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    // Reject the low 2^64 mod bound values so every residue is equally likely.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = engine_();
        if (r >= threshold) return r % bound;
    }
}

namespace {

void check_target(const Graph& g, const SamplerConfig& cfg) {
    if (cfg.target_size < 1) throw InvalidArgument("sample size must be at least 1");
    if (cfg.target_size > g.node_count())
        throw InvalidArgument("sample size " + std::to_string(cfg.target_size) + " exceeds graph size " +
                              std::to_string(g.node_count()));
}

Sample induced_sample(const Graph& g, std::vector<NodeId> nodes) {
    std::sort(nodes.begin(), nodes.end());
    Sample s;
    s.graph = induced_subgraph(g, nodes);
    s.source_nodes = std::move(nodes);
    return s;
}

} // namespace

Sample node_sample(const Graph& g, const SamplerConfig& cfg) {
    check_target(g, cfg);
    Rng rng(cfg.rng_seed);
    std::vector<NodeId> pool(g.node_count());
    std::iota(pool.begin(), pool.end(), NodeId{0});
    // Partial Fisher-Yates: the first target_size slots end up a uniform subset.
    for (std::size_t i = 0; i < cfg.target_size; ++i)
        std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    pool.resize(cfg.target_size);
    return induced_sample(g, std::move(pool));
}

Sample link_sample(const Graph& g, const SamplerConfig& cfg) {
    check_target(g, cfg);
    if (g.edge_count() == 0) throw InvalidArgument("link sampling needs at least one edge");

    Rng rng(cfg.rng_seed);
    auto edges = g.edges();
    std::vector<bool> taken(g.node_count(), false);
    std::vector<NodeId> nodes;
    std::vector<Edge> drawn;
    const std::size_t target = cfg.target_size;

    for (std::size_t i = 0; i < edges.size() && nodes.size() < target; ++i) {
        std::swap(edges[i], edges[i + rng.below(edges.size() - i)]);
        const Edge e = edges[i];
        const std::size_t fresh = (taken[e.u] ? 0 : 1) + (taken[e.v] ? 0 : 1);
        if (nodes.size() + fresh > target) continue;
        for (NodeId x : {e.u, e.v}) {
            if (taken[x]) continue;
            taken[x] = true;
            nodes.push_back(x);
        }
        drawn.push_back(e);
    }

    Sample s;
    if (nodes.size() + 1 < target) {
        if (cfg.on_exhaustion == OnExhaustion::Error)
            throw ComputeError("link sampling exhausted the edges at " + std::to_string(nodes.size()) +
                               " nodes, target " + std::to_string(target));
        s.exhausted = true;
    }

    std::sort(nodes.begin(), nodes.end());
    std::vector<NodeId> remap(g.node_count(), std::numeric_limits<NodeId>::max());
    std::vector<std::string> labels;
    labels.reserve(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        remap[nodes[i]] = static_cast<NodeId>(i);
        labels.push_back(g.label(nodes[i]));
    }
    for (auto& e : drawn) e = {remap[e.u], remap[e.v]};
    s.graph = Graph::from_edges(nodes.size(), drawn, std::move(labels));
    s.source_nodes = std::move(nodes);
    return s;
}

Sample snowball_sample_from(const Graph& g, const SamplerConfig& cfg, NodeId seed) {
    check_target(g, cfg);
    if (seed >= g.node_count()) throw InvalidArgument("snowball seed out of range");

    Rng rng(cfg.rng_seed);
    const std::size_t target = cfg.target_size;
    std::vector<bool> seen(g.node_count(), false);
    std::vector<NodeId> collected;
    collected.reserve(target);
    std::size_t reseeds = 0;

    std::vector<NodeId> level{seed};
    seen[seed] = true;
    while (collected.size() < target) {
        if (level.empty()) {
            if (cfg.on_exhaustion == OnExhaustion::Error)
                throw ComputeError("snowball seed component has " + std::to_string(collected.size()) +
                                   " nodes, fewer than the sample size " + std::to_string(target));
            std::vector<NodeId> unvisited;
            for (NodeId v = 0; v < g.node_count(); ++v)
                if (!seen[v]) unvisited.push_back(v);
            const NodeId next_seed = unvisited[rng.below(unvisited.size())];
            seen[next_seed] = true;
            level.push_back(next_seed);
            ++reseeds;
        }
        rng.shuffle(std::span<NodeId>(level));
        const std::size_t take = std::min(level.size(), target - collected.size());
        collected.insert(collected.end(), level.begin(), level.begin() + static_cast<std::ptrdiff_t>(take));
        if (collected.size() == target) break;

        std::vector<NodeId> next;
        for (NodeId u : level)
            for (NodeId w : g.neighbors(u)) {
                if (seen[w]) continue;
                seen[w] = true;
                next.push_back(w);
            }
        level = std::move(next);
    }

    Sample s = induced_sample(g, std::move(collected));
    s.reseeds = reseeds;
    return s;
}

Sample snowball_sample(const Graph& g, const SamplerConfig& cfg) {
    check_target(g, cfg);
    // The seed is drawn from a separate stream so fixing it leaves the level shuffles unchanged.
    Rng seed_rng(cfg.rng_seed ^ 0x9e3779b97f4a7c15ULL);
    return snowball_sample_from(g, cfg, static_cast<NodeId>(seed_rng.below(g.node_count())));
}

Sample draw_sample(const Graph& g, const SamplerConfig& cfg) {
    switch (cfg.method) {
    case SamplingMethod::Node: return node_sample(g, cfg);
    case SamplingMethod::Link: return link_sample(g, cfg);
    case SamplingMethod::Snowball: return snowball_sample(g, cfg);
    }
    throw InvalidArgument("unknown sampling method");
}

SampleRun run_repeated(const Graph& g, const SamplerConfig& cfg, std::size_t count, std::string source_id,
                       Workers workers) {
    if (count < 1) throw InvalidArgument("sample count must be at least 1");
    SampleRun run{std::move(source_id), cfg, std::vector<Sample>(count)};
    for_each_block(count, workers, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            SamplerConfig c = cfg;
            c.rng_seed = derived_seed(cfg.rng_seed, i);
            try {
                run.samples[i] = draw_sample(g, c);
            } catch (const ComputeError& e) {
                throw ComputeError("sample " + std::to_string(i) + ": " + e.what());
            }
        }
    });
    return run;
}

} // namespace socnet

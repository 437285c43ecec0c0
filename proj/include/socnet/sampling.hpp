#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "socnet/graph.hpp"
#include "socnet/parallel.hpp"

namespace socnet {

enum class SamplingMethod { Node, Link, Snowball };
enum class OnExhaustion { Error, Reseed };

std::string_view to_string(SamplingMethod m);
std::optional<SamplingMethod> parse_sampling_method(std::string_view name);
std::string_view to_string(OnExhaustion e);
std::optional<OnExhaustion> parse_on_exhaustion(std::string_view name);

struct SamplerConfig {
    SamplingMethod method = SamplingMethod::Snowball;
    std::size_t target_size = 1;
    std::uint64_t rng_seed = 0;
    OnExhaustion on_exhaustion = OnExhaustion::Error;
};

/**
 * Seeded generator whose output is identical on every platform: the engine is
 * mt19937_64 and bounded draws use rejection sampling on raw engine output
 * instead of the implementation-defined standard distributions.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

struct Sample {
    Graph graph;
    /// Source-graph index of each sample node; sample node i is source_nodes[i].
    std::vector<NodeId> source_nodes;
    /// Snowball: number of extra seeds drawn after a component ran out.
    std::size_t reseeds = 0;
    /// Link: the target could not be reached; node count fell short by more than one.
    bool exhausted = false;
};

/// Induced subgraph on target_size nodes drawn uniformly without replacement.
Sample node_sample(const Graph& g, const SamplerConfig& cfg);

/**
 * Draws edges uniformly without replacement. An edge is kept when its new
 * endpoints still fit in the budget; drawing stops once the node count reaches
 * target_size. Only drawn edges enter the sample. Running out of edges below
 * target_size - 1 nodes is an exhaustion, handled per cfg.on_exhaustion
 * (Reseed keeps the shortfall and flags it).
 */
Sample link_sample(const Graph& g, const SamplerConfig& cfg);

/**
 * Breadth-first collection from a uniform random seed. Each BFS level is
 * visited in uniformly shuffled order and the last level is cut when the
 * budget is met. Returns the induced subgraph on the collected nodes.
 */
Sample snowball_sample(const Graph& g, const SamplerConfig& cfg);

/// Same as snowball_sample with the first seed fixed.
Sample snowball_sample_from(const Graph& g, const SamplerConfig& cfg, NodeId seed);

/// Dispatches on cfg.method.
Sample draw_sample(const Graph& g, const SamplerConfig& cfg);

struct SampleRun {
    std::string source_id;
    SamplerConfig config;
    std::vector<Sample> samples;
};

/// Seed of the i-th sample in a repeated run.
constexpr std::uint64_t derived_seed(std::uint64_t base, std::size_t index) noexcept { return base + index; }

/// `count` samples, the i-th drawn with seed rng_seed + i. Samples may be
/// produced in parallel; the result is ordered by sample index.
SampleRun run_repeated(const Graph& g, const SamplerConfig& cfg, std::size_t count, std::string source_id = {},
                       Workers workers = {});

} // namespace socnet

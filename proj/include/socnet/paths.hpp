#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "socnet/graph.hpp"
#include "socnet/parallel.hpp"

namespace socnet {

/// BFS summary for one source, over the nodes it reaches (itself excluded).
struct SourceSummary {
    std::uint64_t distance_sum = 0;
    std::uint32_t max_distance = 0;
    std::uint32_t reached = 0;
};

/// One BFS per node. All fields are integers, so results do not depend on the worker count.
std::vector<SourceSummary> summarize_distances(const Graph& g, Workers workers = {});

/// Length of the shortest cycle, or nullopt for a forest.
std::optional<std::uint32_t> shortest_cycle_length(const Graph& g, Workers workers = {});

} // namespace socnet

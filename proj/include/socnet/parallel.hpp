#pragma once

#include <cstddef>
#include <functional>

namespace socnet {

/// Number of worker threads; 0 means "one per hardware thread".
struct Workers {
    unsigned count = 0;
    unsigned resolve() const noexcept;
};

/**
 * Splits [0, items) into a fixed number of contiguous blocks that depends only
 * on `items`, never on the worker count. Callers that reduce per-block partial
 * results in block order therefore get bitwise identical floating-point output
 * for any degree of parallelism.
 */
std::size_t block_count(std::size_t items) noexcept;

/// Runs body(block, begin, end) for every block. The first exception thrown
/// by any block is rethrown on the calling thread after all workers stop.
void for_each_block(std::size_t items, Workers workers,
                    const std::function<void(std::size_t block, std::size_t begin, std::size_t end)>& body);

} // namespace socnet

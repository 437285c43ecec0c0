#include "socnet/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace socnet {

namespace {
constexpr std::size_t kMaxBlocks = 256;
}

unsigned Workers::resolve() const noexcept {
    if (count != 0) return count;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::size_t block_count(std::size_t items) noexcept { return std::min(items, kMaxBlocks); }

void for_each_block(std::size_t items, Workers workers,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
    const std::size_t blocks = block_count(items);
    if (blocks == 0) return;
    auto range = [&](std::size_t b) {
        return std::pair{items * b / blocks, items * (b + 1) / blocks};
    };

    const auto threads = static_cast<std::size_t>(std::min<std::size_t>(workers.resolve(), blocks));
    if (threads <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) {
            auto [begin, end] = range(b);
            body(b, begin, end);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= blocks || failed.load()) return;
            try {
                auto [begin, end] = range(b);
                body(b, begin, end);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(threads - 1);
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    if (error) std::rethrow_exception(error);
}

} // namespace socnet

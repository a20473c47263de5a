#include "partsum/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace partsum {

namespace {
std::atomic<unsigned> g_threads{0};  // 0 = hardware

unsigned effective_threads() {
    unsigned n = g_threads.load(std::memory_order_relaxed);
    if (n == 0) {
        n = std::thread::hardware_concurrency();
        if (n == 0) n = 1;
    }
    return n;
}
}  // namespace

void set_thread_count(unsigned n) { g_threads.store(n, std::memory_order_relaxed); }

unsigned thread_count() { return effective_threads(); }

void parallel_for_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& fn) {
    if (n_chunks == 0) return;
    unsigned workers = effective_threads();
    if (workers > n_chunks) workers = (unsigned)n_chunks;
    if (workers <= 1) {
        for (std::size_t i = 0; i < n_chunks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto body = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n_chunks) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace partsum

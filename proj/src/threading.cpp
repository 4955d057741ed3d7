#include "periodlab/threading.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace periodlab {

namespace {
std::atomic<unsigned> g_threads{1};
constexpr std::size_t kChunk = 64;  // fixed chunk size keeps reductions deterministic
}  // namespace

void set_thread_count(unsigned n) { g_threads.store(n == 0 ? 1 : n); }
unsigned thread_count() { return g_threads.load(); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    unsigned workers = thread_count();
    if (workers <= 1 || n <= kChunk) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    auto run = [&]() {
        while (true) {
            std::size_t ci = next.fetch_add(1);
            if (ci >= chunks) return;
            std::size_t lo = ci * kChunk;
            std::size_t hi = std::min(lo + kChunk, n);
            for (std::size_t i = lo; i < hi; ++i) body(i);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
}

}  // namespace periodlab

#include "avlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace avlab {

namespace {

unsigned resolve_env_cap() {
    const char* env = std::getenv("AVALUE_LAB_THREADS");
    if (!env || !*env) return 0;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || v <= 0) return 0;
    return static_cast<unsigned>(v);
}

std::atomic<unsigned> g_cap{0};

} // namespace

void set_thread_cap(unsigned requested) {
    unsigned env_cap = resolve_env_cap();
    unsigned cap = env_cap ? env_cap : requested;
    if (cap == 0) cap = std::thread::hardware_concurrency();
    if (cap == 0) cap = 1;
    g_cap.store(cap, std::memory_order_relaxed);
}

unsigned thread_cap() {
    unsigned cap = g_cap.load(std::memory_order_relaxed);
    if (cap == 0) {
        set_thread_cap(0);
        cap = g_cap.load(std::memory_order_relaxed);
    }
    return cap;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    unsigned workers = thread_cap();
    if (workers > n) workers = static_cast<unsigned>(n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    std::mutex err_mtx;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= n) return;
                if (failed.load(std::memory_order_relaxed)) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mtx);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace avlab

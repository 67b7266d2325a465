#include "f2rank2/parallel.hpp"

#include <atomic>

namespace f2rank2::par {

namespace {
std::atomic<int> g_threads{0};
}

void set_threads(int n) { g_threads.store(n < 0 ? 0 : n); }

int thread_count() {
    int n = g_threads.load();
    if (n == 0) {
        unsigned hw = std::thread::hardware_concurrency();
        n = hw ? static_cast<int>(hw) : 1;
    }
    return n;
}

}  // namespace f2rank2::par

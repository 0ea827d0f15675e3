#include "maxcomm/parallel.hpp"

#include <atomic>
#include <cstdlib>

namespace maxcomm {

namespace {

std::atomic<int> g_thread_cap{0};

int default_cap() {
    if (const char* env = std::getenv("MAXCOMM_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

void set_thread_cap(int cap) { g_thread_cap.store(cap < 0 ? 0 : cap); }

int thread_cap() {
    const int cap = g_thread_cap.load();
    return cap >= 1 ? cap : default_cap();
}

}  // namespace maxcomm

#include "ponzi/parallel.hpp"

namespace ponzi {

namespace {
std::atomic<unsigned> g_max_threads{0};
}

void set_max_threads(unsigned n) { g_max_threads.store(n); }

unsigned max_threads() {
    unsigned n = g_max_threads.load();
    if (n == 0) n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

}  // namespace ponzi

#include "ratchet/threads.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <string>
#include <thread>
#include <vector>

namespace ratchet {

unsigned effective_threads(unsigned requested) {
    unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("RATCHET_LAB_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return std::max(1u, n);
}

void parallel_ranges(long count, unsigned requested_threads,
                     const std::function<void(long, long)>& fn) {
    const unsigned workers =
        static_cast<unsigned>(std::min<long>(effective_threads(requested_threads), std::max<long>(count, 1)));
    if (workers <= 1 || count <= 1) {
        fn(0, count);
        return;
    }
    const long chunk = (count + workers - 1) / workers;
    std::vector<std::future<void>> futs;
    futs.reserve(workers);
    for (unsigned wi = 0; wi < workers; ++wi) {
        const long lo = wi * chunk;
        const long hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, [&fn, lo, hi] { fn(lo, hi); }));
    }
    for (auto& f : futs) f.get();
}

}  // namespace ratchet

#pragma once

#include <functional>

namespace ratchet {

/// Worker-pool width: RATCHET_LAB_THREADS caps it, hardware concurrency is
/// the default, `requested` (when nonzero) takes precedence below the cap.
unsigned effective_threads(unsigned requested = 0);

/// Runs fn(lo, hi) over a partition of [0, count) on the pool.  Ranges are
/// contiguous and the call blocks until every worker finishes; exceptions are
/// rethrown on the calling thread.
void parallel_ranges(long count, unsigned requested_threads,
                     const std::function<void(long, long)>& fn);

}  // namespace ratchet

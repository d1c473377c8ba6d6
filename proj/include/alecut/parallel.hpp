#ifndef ALECUT_PARALLEL_HPP
#define ALECUT_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace alecut {

// Worker count from the ALECUT_WORKERS environment variable; defaults to 1.
// Values below 1 or above 256 are clamped.
int worker_count();

// Runs fn(i) for i in [0, n). With more than one worker the index range is
// split into contiguous chunks, one thread per chunk. Each index writes only
// its own output slots, so results are identical for any worker count.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

} // namespace alecut

#endif

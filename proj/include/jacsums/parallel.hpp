#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace jacsums {

// Global cap on worker threads (default: hardware concurrency).
void set_max_threads(int n);
int max_threads();

// Runs fn(chunk_index, begin, end) over [begin0, end0) split into a fixed
// number of chunks. The chunk layout does not depend on the thread count,
// so per-chunk results can be reduced in index order to give bit-identical
// totals for any --threads value.
void parallel_chunks(std::int64_t begin0, std::int64_t end0, int nchunks,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn);

} // namespace jacsums

#pragma once

#include <cstdint>
#include <functional>

namespace telic {

/// Budgets and worker counts for grid enumerations.
///
/// Enumerations refuse grids above max_grid_bits with a ResourceError.
/// Distinct-value counting holds the whole image in memory up to memory_bits;
/// beyond that it either refuses or, with streaming=true, falls back to a
/// multi-pass bucketed count that never materializes more than one bucket.
struct ExecPolicy {
  unsigned max_grid_bits = 22;
  unsigned memory_bits = 22;
  unsigned workers = 0;  // 0 = hardware concurrency
  bool streaming = false;
};

unsigned effective_workers(unsigned requested);

/// Splits [0, n) into contiguous chunks, one per worker, and runs
/// fn(chunk_index, begin, end) concurrently. Chunk boundaries depend only on
/// n and the worker count, so per-chunk results can be merged
/// deterministically in chunk order.
void for_chunks(std::uint64_t n, unsigned workers,
                const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& fn);

}  // namespace telic

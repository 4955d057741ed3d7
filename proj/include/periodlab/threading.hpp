#ifndef PERIODLAB_THREADING_HPP
#define PERIODLAB_THREADING_HPP

// Deterministic data-parallel sweeps: work is cut into fixed-size chunks,
// chunks run on any thread, per-chunk results land in preallocated slots and
// are combined in index order afterwards — so outputs never depend on the
// thread count.

#include <cstddef>
#include <functional>

namespace periodlab {

// Global worker cap for sweeps (set from the CLI --threads flag); 0 = one.
void set_thread_count(unsigned n);
unsigned thread_count();

// Calls body(i) for i in [0, n), distributing fixed chunks over workers.
// body must only write to per-index state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace periodlab

#endif

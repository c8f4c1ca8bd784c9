#pragma once

#include <cstddef>
#include <functional>

namespace chi2qec {

// Hardware concurrency (at least 1), capped by CHI2QEC_THREADS when that is a
// positive integer.
std::size_t worker_count();

// Runs body(i) for i in [0, n) on up to worker_count() threads.  Work is split
// into contiguous blocks; callers write results into preallocated slots so the
// outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace chi2qec

#pragma once

#include <cstddef>
#include <functional>

namespace ncsphere {

// Worker count: NCSPHERE_THREADS if set to a positive integer, else the hardware concurrency.
unsigned thread_count();

// Runs body(i) for i in [0, n); iterations must be independent. The first
// exception thrown by any iteration is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace ncsphere

#pragma once

#include <cstddef>
#include <functional>

namespace cohwit {

/// Worker count: COHWIT_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads.
/// Each index is visited exactly once; callers write results into slot i so
/// the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cohwit

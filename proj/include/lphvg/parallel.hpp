#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace lphvg {

// Worker count: LPHVG_THREADS when set (>= 1), else hardware concurrency.
std::size_t thread_count();

// Calls body(i) for i in [0, count) across up to thread_count() threads.
// Each index runs exactly once; callers write results into slot i so the
// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lphvg

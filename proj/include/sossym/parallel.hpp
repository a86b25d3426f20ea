#pragma once

#include <cstddef>
#include <functional>

namespace sossym {

/// Worker count: SOSSYM_THREADS if set, else hardware concurrency (min 1).
std::size_t default_parallelism();
void set_parallelism(std::size_t threads);
std::size_t parallelism();

/// Runs body(i) for i in [0, count) on up to parallelism() threads.
/// The first exception thrown by any task is rethrown after all joins.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace sossym

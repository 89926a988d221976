#pragma once

#include <cstdint>
#include <functional>

namespace sketchkit {

// Worker count: SKETCHKIT_THREADS if set and positive, else hardware concurrency.
int worker_count();

// Runs body(i) for i in [0, count) on up to worker_count() threads. Work is
// claimed dynamically, so body must not depend on which thread runs it.
// The first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::int64_t count, const std::function<void(std::int64_t)>& body);

}  // namespace sketchkit

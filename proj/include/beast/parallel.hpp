// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace beast
{

// Worker cap from BEAST_FLEX_THREADS; 0 or unset means hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, count) on up to worker_count() threads. Exceptions thrown by
// body are rethrown on the caller after all workers finish (the lowest index wins).
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body);

}  // namespace beast

#pragma once

#include <cstddef>
#include <functional>

namespace magbloch {

void set_thread_count(unsigned n); // 0 = hardware concurrency
unsigned thread_count();

// Runs body(i) for i in [0, n) on the configured threads. Exceptions are rethrown (first by index).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace magbloch

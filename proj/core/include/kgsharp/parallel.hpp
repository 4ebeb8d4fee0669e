#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace kgsharp {

// Worker count from KG_SHARP_THREADS (0 or unset: hardware concurrency).
unsigned thread_budget();

// Runs body(i) for i in [0, n) on up to thread_budget() threads. The first
// exception thrown by any task is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& fn) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace kgsharp

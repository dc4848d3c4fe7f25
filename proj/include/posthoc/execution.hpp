#pragma once

// Index-parallel sweep helper. Results are written by index, so merging is
// deterministic whatever the thread schedule. Serial is the reference path.

#include <cstddef>
#include <exception>
#include <vector>

namespace posthoc {

enum class Execution { Serial, Parallel };

/// Number of worker threads a Parallel sweep would use (1 without OpenMP).
int parallel_workers();

template <class Fn>
void for_each_index(std::size_t count, Execution exec, Fn&& fn) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<std::ptrdiff_t>(count);
#if defined(POSTHOC_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic, 8)
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace posthoc

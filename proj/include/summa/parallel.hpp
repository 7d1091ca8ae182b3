#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace summa {

enum class Exec { Serial, Parallel };

// Process-wide default used when callers do not pick one explicitly.
Exec default_exec();
void set_default_exec(Exec exec);

// Calls body(i) for i in [0, count). With Exec::Parallel the calls are spread
// over OpenMP threads. If any call throws, the exception of the smallest index
// is rethrown after the loop, so failures are reported deterministically.
template <class Body>
void for_each_index(std::size_t count, Exec exec, Body&& body) {
  std::vector<std::exception_ptr> errors(count);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < static_cast<long>(count); ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
        break;
      }
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace summa

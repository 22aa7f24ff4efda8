#include "ddestab/sweep.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <string>

namespace ddestab {

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& fn, Exec exec) {
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(ddestab_sweep_error)
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

int configure_threads_from_env() {
  if (const char* env = std::getenv("DDE_STAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) omp_set_num_threads(static_cast<int>(v));
  }
  return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace ddestab

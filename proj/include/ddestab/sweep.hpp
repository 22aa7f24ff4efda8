#pragma once

#include <cstddef>
#include <functional>

namespace ddestab {

enum class Exec { Serial, Parallel };

// Calls fn(i) for i in [0, n). The parallel variant uses an OpenMP dynamic
// schedule; callers write results into per-index slots so output order never
// depends on the schedule. The first exception thrown by fn is rethrown.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& fn, Exec exec = Exec::Parallel);

// Applies DDE_STAB_THREADS (a positive integer) as the OpenMP thread cap and
// returns the number of threads parallel sweeps will use.
int configure_threads_from_env();

int max_threads();

}  // namespace ddestab

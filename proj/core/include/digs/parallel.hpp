#pragma once

#include <cstdint>
#include <functional>

namespace digs {

// Runs fn(run_index) for every run_index in [0, count) on up to `jobs`
// threads.  Callers derive per-index random streams, so results do not
// depend on scheduling; the first exception (if any) is rethrown after all
// workers join.
void parallel_runs(int jobs, int64_t count, const std::function<void(int64_t)>& fn);

}  // namespace digs

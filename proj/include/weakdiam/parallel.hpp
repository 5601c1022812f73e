#pragma once

#include <cstddef>

namespace weakdiam {

// Caps the OpenMP team size used by every kernel in the library. Values < 1
// restore the runtime default. Results never depend on this setting: parallel
// loops write into index-owned slots and all reductions run in index order.
void set_thread_count(int threads);
int thread_count();

// Reads WEAKDIAM_THREADS; returns 0 if unset or malformed.
int thread_count_from_env();

}  // namespace weakdiam

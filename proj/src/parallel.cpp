#include "weakdiam/parallel.hpp"

#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace weakdiam {

namespace {
int default_threads() { return omp_get_num_procs(); }
}  // namespace

void set_thread_count(int threads) {
  omp_set_num_threads(threads < 1 ? default_threads() : threads);
}

int thread_count() { return omp_get_max_threads(); }

int thread_count_from_env() {
  const char* raw = std::getenv("WEAKDIAM_THREADS");
  if (raw == nullptr) return 0;
  int value = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc() || ptr != end || value < 1) return 0;
  return value;
}

}  // namespace weakdiam

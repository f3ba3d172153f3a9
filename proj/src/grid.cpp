#include "casurf/grid.hpp"

#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace casurf {

int thread_count() {
  if (const char* env = std::getenv("CASURF_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
    return 1;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_rows(int nrows, const std::function<void(int)>& fn) {
  const int workers = std::min(thread_count(), std::max(nrows, 1));
  if (workers <= 1 || nrows <= 1) {
    for (int r = 0; r < nrows; ++r) fn(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int r = w; r < nrows; r += workers) fn(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace casurf

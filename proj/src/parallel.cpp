#include "conecalib/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace conecalib {

int worker_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("CONECALIB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1 && cap < 1024) n = std::min<long>(n, cap);
    if (end != env && cap < 1) n = 1;
  }
  return n;
}

void parallel_for(long n, const std::function<void(long)>& body) {
  if (n <= 0) return;
  const int workers = std::min<long>(worker_count(), n);
  if (workers == 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const long chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const long lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (long i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

MaxResult parallel_max(long n, const std::function<double(long)>& f) {
  const int workers = std::min<long>(std::max(1, worker_count()), std::max(1L, n));
  std::vector<MaxResult> partial(workers, {-1e308, -1});
  const long chunk = (n + workers - 1) / workers;

  auto block = [&](int w) {
    const long lo = w * chunk, hi = std::min(n, lo + chunk);
    MaxResult best{-1e308, -1};
    for (long i = lo; i < hi; ++i) {
      const double v = f(i);
      if (v > best.value) best = {v, i};
    }
    partial[static_cast<size_t>(w)] = best;
  };

  if (workers == 1) {
    block(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(block, w);
    for (auto& t : pool) t.join();
  }

  // Combine in index order; strict > keeps the earliest index on ties, so the
  // result is independent of the worker count.
  MaxResult best{-1e308, -1};
  for (const auto& pr : partial)
    if (pr.index >= 0 && pr.value > best.value) best = pr;
  return best;
}

}  // namespace conecalib

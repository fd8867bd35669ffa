#pragma once

#include <functional>

namespace conecalib {

// Worker count: hardware concurrency, capped by the CONECALIB_THREADS
// environment variable (values < 1 mean serial).
int worker_count();

// Static block partition of [0, n) over the workers.
void parallel_for(long n, const std::function<void(long)>& body);

// Deterministic max-reduce of f over [0, n): each worker maxes its block,
// blocks are combined in index order, ties resolved to the smallest index.
struct MaxResult {
  double value;
  long index;
};
MaxResult parallel_max(long n, const std::function<double(long)>& f);

}  // namespace conecalib

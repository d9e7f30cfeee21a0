// Worker-pool map over an index range plus deterministic pairwise-summation
// reduction. Results are stored per index before reduction, so sums are
// bitwise reproducible for any worker count at fixed node ordering.
#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace hypmass {

inline void parallel_for(int nitems, int workers, const std::function<void(int)>& body) {
  if (workers <= 1 || nitems < 2) {
    for (int i = 0; i < nitems; ++i) body(i);
    return;
  }
  const int nthreads = std::min(workers, nitems);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([=, &body]() {
      for (int i = t; i < nitems; i += nthreads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Pairwise (recursive halving) summation.
inline double pairwise_sum(const double* v, size_t count) {
  if (count == 0) return 0.0;
  if (count <= 8) {
    double s = 0.0;
    for (size_t i = 0; i < count; ++i) s += v[i];
    return s;
  }
  const size_t half = count / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, count - half);
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace hypmass

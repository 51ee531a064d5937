#ifndef DISKFRAC_UTIL_HPP_
#define DISKFRAC_UTIL_HPP_

#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace diskfrac {

/// Point on the closed unit disk in polar coordinates.
struct PolarPoint {
  double r = 0.0;
  double phi = 0.0;
};

using ScalarField = std::function<double(PolarPoint)>;

inline double sqr(double x) { return x * x; }

/// Thread count taken from DISKFRAC_THREADS, else hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("DISKFRAC_THREADS")) {
    int t = std::atoi(env);
    if (t >= 1) return t;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Chunked parallel loop over [0, count). Body must be safe to run
/// concurrently on disjoint indices.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const int nt = thread_count();
  if (nt <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  std::size_t chunk = (count + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    std::size_t lo = t * chunk;
    std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body]() {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace diskfrac

#endif  // DISKFRAC_UTIL_HPP_

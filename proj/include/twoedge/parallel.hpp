#ifndef TWOEDGE_PARALLEL_HPP
#define TWOEDGE_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace twoedge {

/** \brief Number of worker threads to use when the caller asks for 0 (auto). */
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/**
 * \brief Calls fn(i) for i in [0, n) over contiguous chunks.
 *
 * Results must be written to per-index slots so the outcome does not depend
 * on scheduling.  The first exception thrown by any worker is rethrown.
 */
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn &&fn) {
  const std::size_t t = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n, 1));
  if (t <= 1 || n < 64) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(t);
  std::vector<std::thread> pool;
  pool.reserve(t);
  const std::size_t chunk = (n + t - 1) / t;
  for (std::size_t w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto &th : pool) th.join();
  for (auto &e : errors)
    if (e) std::rethrow_exception(e);
}

} // namespace twoedge

#endif // TWOEDGE_PARALLEL_HPP

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

#include "whichpath/errors.hpp"

namespace whichpath {

/// Evaluate fn(0..n-1) on up to `threads` workers (0 = hardware concurrency).
/// Results come back in index order; if several points throw, the exception of
/// the lowest index is rethrown, so the outcome does not depend on scheduling.
template <class Fn>
auto parallel_map(std::size_t n, Fn&& fn, std::size_t threads = 0) {
  using T = std::decay_t<std::invoke_result_t<Fn&, std::size_t>>;
  std::vector<T> results(n);
  std::vector<std::exception_ptr> errors(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(n, 1));

  auto work = [&](std::size_t worker) {
    for (std::size_t i = worker; i < n; i += threads) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);
  return results;
}

enum class Spacing { linear, log };

/// Inclusive grid of `count` points from start to stop.
inline std::vector<double> make_grid(double start, double stop, std::size_t count, Spacing spacing = Spacing::linear) {
  if (count < 2) throw ConfigError("sweep needs at least 2 points");
  if (!(start < stop)) throw ConfigError("sweep needs start < stop");
  if (spacing == Spacing::log && !(start > 0.0)) throw ConfigError("log sweep needs positive start");
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    grid[i] = spacing == Spacing::linear ? start + t * (stop - start)
                                         : std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
  }
  grid.front() = start;
  grid.back() = stop;
  return grid;
}

}  // namespace whichpath

#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rootwalk {

/// Monte Carlo controls shared by every estimator.
///
/// Path i always draws from stream_engine(seed, i), so results do not
/// depend on the number of workers.
struct McOptions {
  std::int64_t paths = 100'000;
  std::uint64_t seed = 1;
  int workers = 1;
};

/// Evaluates fn(i) for i in [0, count) and returns the results in index
/// order. Work is split into contiguous chunks across `workers` threads.
template <class Fn>
auto parallel_map(std::int64_t count, int workers, Fn&& fn) {
  using T = decltype(fn(std::int64_t{}));
  std::vector<T> out(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  const int w = static_cast<int>(std::clamp<std::int64_t>(workers, 1, std::max<std::int64_t>(count, 1)));
  if (w == 1) {
    for (std::int64_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (int k = 0; k < w; ++k) {
    const std::int64_t lo = count * k / w;
    const std::int64_t hi = count * (k + 1) / w;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::int64_t i = lo; i < hi; ++i) out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace rootwalk

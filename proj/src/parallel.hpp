#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace matmod::detail {

// Runs body(0..count-1) over a static partition of worker threads. Each
// index must write only its own slot of any shared output, which keeps the
// result independent of scheduling. The first exception is rethrown after
// all workers join.
inline void parallel_replicates(int count,
                                const std::function<void(int)>& body) {
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers =
      std::max(1, std::min<int>(hw == 0 ? 1 : static_cast<int>(hw), 8));
  if (count < 512 || workers == 1) {
    for (int r = 0; r < count; ++r) body(r);
    return;
  }
  const int chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int begin = w * chunk;
    const int end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, w, begin, end] {
      try {
        for (int r = begin; r < end; ++r) body(r);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace matmod::detail

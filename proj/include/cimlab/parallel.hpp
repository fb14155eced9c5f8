#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace cimlab {

/// Runs fn(i) for i in [0, count) on `workers` threads with a fixed striped assignment and
/// returns the results in index order. The first exception (lowest index) is rethrown.
template <typename Result, typename Fn>
std::vector<Result> parallel_map(std::size_t count, std::size_t workers, Fn&& fn) {
  std::vector<Result> out(count);
  std::vector<std::exception_ptr> errors(count);
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers && w < count; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < count; i += workers) {
          try {
            out[i] = fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (auto const& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace cimlab

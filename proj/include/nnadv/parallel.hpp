#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace nnadv {

/// Thread count hint from NN_ADV_THREADS; 1 when unset or malformed.
inline unsigned threads_from_env() {
  const char* raw = std::getenv("NN_ADV_THREADS");
  if (raw == nullptr) return 1;
  try {
    const long v = std::stol(raw);
    return v >= 1 ? static_cast<unsigned>(v) : 1U;
  } catch (const std::exception&) {
    return 1;
  }
}

/// Evaluates fn(0) .. fn(count - 1) on up to `threads` workers and returns
/// the results in index order. The first exception (by index) is rethrown.
template <typename Fn>
auto parallel_map(std::size_t count, unsigned threads, Fn&& fn) {
  using T = std::invoke_result_t<Fn&, std::size_t>;
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<T> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace nnadv

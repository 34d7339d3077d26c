#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace hypercert {

/// Applies fn to every item on up to `jobs` threads. Results come back in
/// input order; the first exception (by index) is rethrown.
template <typename T, typename Fn>
auto parallel_map(const std::vector<T>& items, int jobs, Fn fn) -> std::vector<decltype(fn(items.front()))> {
  using R = decltype(fn(items.front()));
  std::vector<std::optional<R>> slots(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        slots[i].emplace(fn(items[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, 256));
  if (workers == 1 || items.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(workers, items.size()); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<R> out;
  out.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace hypercert

#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace mulhopf {

/// Number of worker threads used by axiom checks. Defaults to MULHOPF_JOBS
/// when set, else 1.
unsigned default_jobs();
void set_default_jobs(unsigned jobs);

/// Evaluates fn(i) for i in [0, n) and returns the smallest index whose
/// result is engaged, together with that result. Every index below the
/// returned one is evaluated, so the answer does not depend on scheduling.
/// An exception thrown for the smallest offending index is rethrown.
template <class R>
std::optional<std::pair<std::size_t, R>> first_hit(std::size_t n,
                                                   const std::function<std::optional<R>(std::size_t)>& fn,
                                                   unsigned jobs = default_jobs()) {
  if (jobs <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) {
      if (auto r = fn(i)) return std::make_pair(i, std::move(*r));
    }
    return std::nullopt;
  }
  std::vector<std::optional<R>> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{n};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || i > best.load()) return;
      try {
        results[i] = fn(i);
        if (!results[i]) continue;
      } catch (...) {
        errors[i] = std::current_exception();
      }
      std::size_t cur = best.load();
      while (i < cur && !best.compare_exchange_weak(cur, i)) {
      }
    }
  };
  std::vector<std::jthread> pool;
  const unsigned count = jobs < n ? jobs : static_cast<unsigned>(n);
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  pool.clear();
  const std::size_t b = best.load();
  if (b == n) return std::nullopt;
  if (errors[b]) std::rethrow_exception(errors[b]);
  return std::make_pair(b, std::move(*results[b]));
}

}  // namespace mulhopf

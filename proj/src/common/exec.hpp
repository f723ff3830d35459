#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "common/error.hpp"

namespace fqp {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 26;

// Execution limits shared by every enumerating operation.
struct ExecOptions {
  std::uint64_t budget = kDefaultBudget;  // max points enumerated by one call
  unsigned workers = 1;
};

inline void require_budget(std::uint64_t needed, const ExecOptions& opts,
                           const std::string& what) {
  if (needed > opts.budget) {
    throw BudgetError(what + " needs " + std::to_string(needed) +
                      " enumeration steps, budget is " +
                      std::to_string(opts.budget));
  }
}

// [lo, hi) of chunk `i` when [0, total) is split into `parts` contiguous
// chunks of near-equal size.
inline std::pair<std::uint64_t, std::uint64_t> chunk_bounds(std::uint64_t total,
                                                            unsigned parts,
                                                            unsigned i) {
  const std::uint64_t base = total / parts;
  const std::uint64_t extra = total % parts;
  const std::uint64_t lo = i * base + std::min<std::uint64_t>(i, extra);
  const std::uint64_t hi = lo + base + (i < extra ? 1 : 0);
  return {lo, hi};
}

// Runs `body(lo, hi)` over contiguous chunks of [0, total) and folds the
// partial results in chunk order, so the result never depends on `workers`
// as long as `combine` is associative.
template <class T, class Body, class Combine>
T parallel_reduce(std::uint64_t total, unsigned workers, T init, Body body,
                  Combine combine) {
  const unsigned parts = static_cast<unsigned>(
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, total)));
  if (parts == 1) return combine(std::move(init), body(std::uint64_t{0}, total));

  std::vector<T> partial(parts, init);
  std::vector<std::exception_ptr> errors(parts);
  {
    std::vector<std::jthread> pool;
    pool.reserve(parts);
    for (unsigned i = 0; i < parts; ++i) {
      pool.emplace_back([&, i] {
        try {
          auto [lo, hi] = chunk_bounds(total, parts, i);
          partial[i] = body(lo, hi);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  T acc = std::move(init);
  for (auto& p : partial) acc = combine(std::move(acc), std::move(p));
  return acc;
}

}  // namespace fqp

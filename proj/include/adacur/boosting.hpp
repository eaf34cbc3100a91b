#pragma once

#include <cstdint>
#include <type_traits>
#include <vector>

#include "adacur/errors.hpp"
#include "adacur/matrix.hpp"

namespace adacur {

template <class T>
struct Boosted {
  T best;
  Index best_index = 0;
  /// One entry per repeat, in repeat order.
  std::vector<double> errors;
};

/// Runs `run(seed + i)` for i < t and keeps the result with the smallest
/// `error(result)`. Ties go to the lowest repeat index.
template <class Run, class Error>
auto boosted_run(Index t, std::uint64_t seed, Run&& run, Error&& error)
    -> Boosted<std::invoke_result_t<Run&, std::uint64_t>> {
  using T = std::invoke_result_t<Run&, std::uint64_t>;
  if (t < 1) throw ArgumentError("boosted_run: need at least one repeat");
  std::vector<double> errors;
  errors.reserve(t);
  T best = run(seed);
  errors.push_back(error(best));
  Index best_index = 0;
  for (Index i = 1; i < t; ++i) {
    T candidate = run(seed + i);
    const double e = error(candidate);
    errors.push_back(e);
    if (e < errors[best_index]) {
      best = std::move(candidate);
      best_index = i;
    }
  }
  return Boosted<T>{std::move(best), best_index, std::move(errors)};
}

}  // namespace adacur

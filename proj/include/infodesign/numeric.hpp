#pragma once

#include <cstddef>
#include <functional>
#include <limits>

namespace infodesign {

// Zero for exact scalar types, 1e-12 otherwise.
template <typename Scalar>
Scalar probability_tolerance() {
  if constexpr (std::numeric_limits<Scalar>::is_exact) {
    return Scalar(0);
  } else {
    return Scalar(1e-12);
  }
}

// Worker count: hardware concurrency capped by INFODESIGN_THREADS when set.
unsigned thread_budget();

// Runs fn(i) for i in [0, n) on up to thread_budget() threads. Each index
// must write only its own output slot.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace infodesign

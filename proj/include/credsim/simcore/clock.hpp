#pragma once

#include "credsim/types.hpp"

namespace credsim {

/// Monotone integer-second clock. Only moves forward through advance().
class SimClock {
 public:
  constexpr SimClock() = default;
  constexpr explicit SimClock(Tick now) : now_(now) {}

  constexpr Tick now() const noexcept { return now_; }

  /// Throws std::invalid_argument on negative dt.
  void advance(Seconds dt);

  /// Moves to `tick` if it lies in the future; never moves backwards.
  void advance_to(Tick tick);

  friend constexpr bool operator==(SimClock, SimClock) = default;

 private:
  Tick now_ = 0;
};

SimClock advance(SimClock clock, Seconds dt);

}  // namespace credsim

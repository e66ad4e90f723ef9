#include "credsim/simcore/clock.hpp"

#include <string>

namespace credsim {

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration";
        for (std::size_t i = 0; i < problems.size(); ++i) {
          msg += i == 0 ? ": " : "; ";
          msg += problems[i];
        }
        return msg;
      }()),
      problems_(std::move(problems)) {}

void SimClock::advance(Seconds dt) {
  if (dt < 0) {
    throw std::invalid_argument("SimClock::advance: negative dt " + std::to_string(dt));
  }
  now_ += dt;
}

void SimClock::advance_to(Tick tick) {
  if (tick > now_) now_ = tick;
}

SimClock advance(SimClock clock, Seconds dt) {
  clock.advance(dt);
  return clock;
}

}  // namespace credsim

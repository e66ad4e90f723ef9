#include "credsim/defenses/mfa.hpp"

#include <stdexcept>

namespace credsim {

std::string_view to_string(SecondFactor f) {
  switch (f) {
    case SecondFactor::None: return "none";
    case SecondFactor::ValidOtp: return "validOtp";
    case SecondFactor::InterceptedOtp: return "interceptedOtp";
  }
  return "none";
}

MfaResult mfa_verify(SecondFactor presented, bool enrolled, double interception_probability, RngStream& rng) {
  if (!enrolled) throw std::logic_error("mfa_verify: account has no second factor enrolled");
  switch (presented) {
    case SecondFactor::ValidOtp: return MfaResult::Pass;
    case SecondFactor::InterceptedOtp:
      return rng.bernoulli(interception_probability) ? MfaResult::Pass : MfaResult::Fail;
    case SecondFactor::None: return MfaResult::Fail;
  }
  return MfaResult::Fail;
}

}  // namespace credsim

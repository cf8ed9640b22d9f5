#pragma once

#include "guess/bob.hpp"
#include "guess/coverage.hpp"
#include "guess/rng.hpp"

namespace guess {

/// Accept with probability F(x). Pure thresholds decide deterministically
/// (accept iff x >= t) without consuming randomness.
bool decide(const CoverageFunction& f, double x, RngStream& rng);

RoundOutcome judge(double shown, double hidden, bool accepted);

/// One round: Bob writes, Alice decides on the shown number.
RoundOutcome play_round(const BobStrategy& bob, const CoverageFunction& alice,
                        RngStream& rng);

}  // namespace guess

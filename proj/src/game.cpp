#include "guess/game.hpp"

namespace guess {

bool decide(const CoverageFunction& f, double x, RngStream& rng) {
  if (const auto* step = f.as<kind::StepThreshold>()) return x >= step->t;
  const double p = f(x);
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return rng.uniform() < p;
}

RoundOutcome judge(double shown, double hidden, bool accepted) {
  if (shown == hidden) throw TieError("tied round");
  RoundOutcome out;
  out.shown = shown;
  out.hidden = hidden;
  out.accepted = accepted;
  out.correct = accepted == (shown > hidden);
  return out;
}

RoundOutcome play_round(const BobStrategy& bob, const CoverageFunction& alice, RngStream& rng) {
  const NumberPair pair = sample(bob, rng);
  return judge(pair.shown, pair.hidden, decide(alice, pair.shown, rng));
}

}  // namespace guess

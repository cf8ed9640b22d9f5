#include "guess/types.hpp"

#include <cmath>
#include <string>

namespace guess {

Probability::Probability(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::domain_error("probability out of [0, 1]: " + std::to_string(value));
  }
}

NumberPair::NumberPair(double shown_value, double hidden_value)
    : shown(shown_value), hidden(hidden_value) {
  if (shown == hidden) {
    throw TieError("shown and hidden numbers tie at " + std::to_string(shown));
  }
}

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::no || b == Tri::no) return Tri::no;
  if (a == Tri::yes && b == Tri::yes) return Tri::yes;
  return Tri::unknown;
}

Tri tri_not(Tri a) {
  switch (a) {
    case Tri::yes: return Tri::no;
    case Tri::no: return Tri::yes;
    default: return Tri::unknown;
  }
}

const char* to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    default: return "unknown";
  }
}

}  // namespace guess

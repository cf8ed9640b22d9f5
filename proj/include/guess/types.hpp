#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace guess {

struct TieError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidPair : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnsupportedPoint : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ConditioningOnNull : std::domain_error {
  using std::domain_error::domain_error;
};
struct DegenerateConditioning : std::domain_error {
  using std::domain_error::domain_error;
};
struct ExhaustionLimit : std::length_error {
  using std::length_error::length_error;
};
struct NonPositive : std::domain_error {
  using std::domain_error::domain_error;
};
struct QuadratureNonconvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A value in [0, 1]. Construction outside the range throws.
class Probability {
 public:
  constexpr Probability() = default;
  explicit Probability(double value);

  constexpr double value() const { return value_; }
  constexpr operator double() const { return value_; }

  Probability complement() const { return Probability{1.0 - value_}; }

 private:
  double value_ = 0.0;
};

/// Shown / hidden numbers of one round. Ties are rejected.
struct NumberPair {
  double shown;
  double hidden;

  NumberPair(double shown_value, double hidden_value);
};

struct RoundOutcome {
  double shown = 0.0;
  double hidden = 0.0;
  bool accepted = false;
  bool correct = false;
};

/// Three-valued answer for properties that can be certified, refuted or
/// left open.
enum class Tri : std::uint8_t { no, yes, unknown };

Tri tri_and(Tri a, Tri b);
Tri tri_not(Tri a);
const char* to_string(Tri t);

}  // namespace guess

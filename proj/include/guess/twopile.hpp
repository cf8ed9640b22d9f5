#pragma once

#include "guess/rng.hpp"
#include "guess/types.hpp"

#include <span>
#include <string>
#include <vector>

namespace guess::twopile {

/// n cards, Alice's pile holds k of them.
class PileConfig {
 public:
  PileConfig(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  int other() const { return n_ - k_; }
  double ratio() const { return static_cast<double>(k_) / n_; }
  bool symmetric() const { return 2 * k_ == n_; }

 private:
  int n_;
  int k_;
};

/// Scale density h(a) = c a^(delta - 1) on (0, 1), c a^(-delta - 1) on
/// [1, inf), with c = delta / 2 so that h integrates to one.
class ScaleMixtureModel {
 public:
  explicit ScaleMixtureModel(double delta);
  ScaleMixtureModel(double delta, double c);

  double delta() const { return delta_; }
  double c() const { return c_; }

 private:
  double delta_;
  double c_;
};

// -- iid uniform cards ---------------------------------------------------

/// k/n + (1 - k/n) 2^(-k/(n-k)).
Probability iid_value(const PileConfig& cfg);
/// Median of the other pile's maximum: 2^(-1/(n-k)).
double iid_median(const PileConfig& cfg);
/// Win probability of the best response as a function of r = k/n.
double iid_value_at_ratio(double r);

struct WorstRatio {
  double ratio;
  double value;
};

/// Golden-section minimum of iid_value_at_ratio over (0, 1).
WorstRatio worst_ratio(double tol = 1e-6);

// -- scale mixture ------------------------------------------------------

double h_density(double a, const ScaleMixtureModel& model);
/// Piecewise inverse CDF of the scale density.
double h_inverse_cdf(double u, const ScaleMixtureModel& model);
/// log of h_inverse_cdf; finite even where the scale itself under- or
/// overflows.
double h_log_inverse_cdf(double u, const ScaleMixtureModel& model);
double h_sample(const ScaleMixtureModel& model, RngStream& rng);

/// g_n(x) = int_x^inf a^-n h(a) da in closed form.
double g_eval(double x, int n, const ScaleMixtureModel& model);
/// x^n g_n(x) as a function of log x; finite where the factors are not.
double g_scaled(double log_x, int n, const ScaleMixtureModel& model);

/// P(X > Y | observed pile with maximum x) = x^(n-k) g_n(x) / g_k(x).
Probability pi_nk(double x, const PileConfig& cfg, const ScaleMixtureModel& model);
/// Same ratio from log x; usable for maxima far outside double range.
Probability pi_nk_log(double log_x, const PileConfig& cfg, const ScaleMixtureModel& model);
/// Limits of pi as x -> 0 and on the plateau x >= 1.
double pi_limit_at_zero(const PileConfig& cfg, const ScaleMixtureModel& model);
double pi_plateau(const PileConfig& cfg, const ScaleMixtureModel& model);

struct EpsilonReport {
  bool passed = false;
  double worst_deviation = 0.0;
  int worst_n = 0;
  int worst_k = 0;
  /// Location of the worst deviation; 0 stands for the x -> 0 limit.
  double worst_x = 0.0;
};

/// Checks |pi_{n,k}(x) - k/n| < eps for every grid x, the x -> 0 limit and
/// the plateau, over all 1 <= k < n <= max_n. Requires 0 < eps < 1/max_n.
EpsilonReport epsilon_bound_check(int max_n, double eps, double delta,
                                  std::span<const double> grid);
/// Log-spaced grid from 1e-12 to 1e6 used by default.
std::vector<double> default_epsilon_grid();
/// delta = min(eps/2, eps(1 - eps)/2).
double select_delta(double eps);

/// One deal. Values are a u_i; the order of the cards is the order of the
/// u_i, and log_a keeps the scale exact when a itself is out of range.
struct TwoPileDeal {
  double log_a = 0.0;
  std::vector<double> u;  // n uniforms, Alice's k first
  int k = 0;

  double a() const;
  double value(std::size_t i) const;
  double log_value(std::size_t i) const;
  std::vector<double> alice_values() const;
  std::vector<double> bob_pile_values() const;
  double x() const;
  double y() const;
  double log_x() const;
  /// Index of Alice's maximum within u.
  std::size_t alice_max_index() const;
  std::size_t bob_max_index() const;
  /// X > Y.
  bool alice_holds_max() const;
};

TwoPileDeal deal(const PileConfig& cfg, const ScaleMixtureModel& model, RngStream& rng);
/// n iid uniforms on [0, 1] split k / n - k (log_a = 0).
TwoPileDeal deal_iid(const PileConfig& cfg, RngStream& rng);

/// Accept (the maximum is in Alice's pile) iff pi(x) >= 1/2.
bool best_response_decision(const TwoPileDeal& d, const PileConfig& cfg,
                            const ScaleMixtureModel& model);
/// Bet on the larger pile; fair coin when the piles are equal.
bool blind_decision(const PileConfig& cfg, RngStream& rng);
/// iid best response: accept iff x >= median of the other pile's maximum.
bool iid_decision(const TwoPileDeal& d, const PileConfig& cfg);

/// Density of Alice's maximum, k x^(k-1) g_k(x).
double alice_max_density(double x, const PileConfig& cfg, const ScaleMixtureModel& model);

/// int max(pi, 1 - pi) k x^(k-1) g_k(x) dx, split at x = 1. Throws
/// QuadratureNonconvergence if the relative error estimate exceeds 1e-6.
Probability best_response_value_quadrature(const PileConfig& cfg,
                                           const ScaleMixtureModel& model);

/// max(k/n, 1 - k/n).
Probability game_value(const PileConfig& cfg);

/// "mantissa e exponent" text of exp(log_value) with 12 significant digits;
/// exact in exponent range well beyond double.
std::string format_from_log(double log_value);

/// CSV rows of deals: a, z_1..z_n, x, y, decision, correct.
std::string deals_csv_header(const PileConfig& cfg);
std::string deal_csv_row(const TwoPileDeal& d, bool decision);

}  // namespace guess::twopile

#include "guess/twopile.hpp"

#include "guess/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace guess::twopile {

PileConfig::PileConfig(int n, int k) : n_(n), k_(k) {
  if (n < 2 || k < 1 || k >= n) {
    throw std::invalid_argument("pile config needs n >= 2 and 1 <= k < n");
  }
}

ScaleMixtureModel::ScaleMixtureModel(double delta) : ScaleMixtureModel(delta, delta / 2.0) {}

ScaleMixtureModel::ScaleMixtureModel(double delta, double c) : delta_(delta), c_(c) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(c > 0.0)) throw std::invalid_argument("normalising constant must be positive");
}

// -- iid ------------------------------------------------------------------

double iid_value_at_ratio(double r) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("ratio must lie in (0, 1)");
  return r + (1.0 - r) * std::exp2(-r / (1.0 - r));
}

Probability iid_value(const PileConfig& cfg) {
  const double r = cfg.ratio();
  const double v = r + (1.0 - r) * std::exp2(-static_cast<double>(cfg.k()) / cfg.other());
  return Probability{v};
}

double iid_median(const PileConfig& cfg) { return std::exp2(-1.0 / cfg.other()); }

WorstRatio worst_ratio(double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 1e-9;
  double hi = 1.0 - 1e-9;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = iid_value_at_ratio(x1);
  double f2 = iid_value_at_ratio(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = iid_value_at_ratio(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = iid_value_at_ratio(x2);
    }
  }
  const double r = 0.5 * (lo + hi);
  return {r, iid_value_at_ratio(r)};
}

// -- scale mixture ------------------------------------------------------

double h_density(double a, const ScaleMixtureModel& model) {
  if (!(a > 0.0)) throw NonPositive("scale density needs a > 0");
  const double d = model.delta();
  return a >= 1.0 ? model.c() * std::pow(a, -d - 1.0) : model.c() * std::pow(a, d - 1.0);
}

double h_log_inverse_cdf(double u, const ScaleMixtureModel& model) {
  if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("inverse CDF needs u in (0, 1)");
  // CDF: a^delta / 2 below 1, 1 - a^-delta / 2 above.
  if (u < 0.5) return std::log(2.0 * u) / model.delta();
  return -std::log(2.0 * (1.0 - u)) / model.delta();
}

double h_inverse_cdf(double u, const ScaleMixtureModel& model) {
  return std::exp(h_log_inverse_cdf(u, model));
}

double h_sample(const ScaleMixtureModel& model, RngStream& rng) {
  return h_inverse_cdf(rng.uniform_open(), model);
}

double g_eval(double x, int n, const ScaleMixtureModel& model) {
  if (!(x > 0.0)) throw NonPositive("g_n needs x > 0");
  if (n < 1) throw std::invalid_argument("g_n needs n >= 1");
  const double d = model.delta();
  const double c = model.c();
  const double nn = n;
  if (x >= 1.0) return c / (nn + d) * std::pow(x, -nn - d);
  return c / (nn - d) * std::pow(x, -nn + d) - 2.0 * c * d / (nn * nn - d * d);
}

double g_scaled(double log_x, int k, const ScaleMixtureModel& model) {
  const double d = model.delta();
  const double c = model.c();
  const double kk = k;
  if (log_x >= 0.0) return c / (kk + d) * std::exp(-d * log_x);
  return c / (kk - d) * std::exp(d * log_x) - 2.0 * c * d * std::exp(kk * log_x) / (kk * kk - d * d);
}

Probability pi_nk_log(double log_x, const PileConfig& cfg, const ScaleMixtureModel& model) {
  if (std::isnan(log_x)) throw NonPositive("pi needs x > 0");
  const double d = model.delta();
  const double c = model.c();
  const double n = cfg.n();
  const double k = cfg.k();
  // x^(n-k) g_n(x) / g_k(x), numerator and denominator both multiplied by
  // x^(k + delta) on the plateau and by x^(k - delta) below 1.
  double num;
  double den;
  if (log_x >= 0.0) {
    num = c / (n + d);
    den = c / (k + d);
  } else {
    num = c / (n - d) - 2.0 * c * d * std::exp((n - d) * log_x) / (n * n - d * d);
    den = c / (k - d) - 2.0 * c * d * std::exp((k - d) * log_x) / (k * k - d * d);
  }
  return Probability{std::clamp(num / den, 0.0, 1.0)};
}

Probability pi_nk(double x, const PileConfig& cfg, const ScaleMixtureModel& model) {
  if (!(x > 0.0)) throw NonPositive("pi needs x > 0");
  return pi_nk_log(std::log(x), cfg, model);
}

double pi_limit_at_zero(const PileConfig& cfg, const ScaleMixtureModel& model) {
  return (cfg.k() - model.delta()) / (cfg.n() - model.delta());
}

double pi_plateau(const PileConfig& cfg, const ScaleMixtureModel& model) {
  return (cfg.k() + model.delta()) / (cfg.n() + model.delta());
}

std::vector<double> default_epsilon_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 450; ++i) grid.push_back(std::pow(10.0, -12.0 + i * 0.04));
  grid.push_back(1.0);
  std::sort(grid.begin(), grid.end());
  return grid;
}

double select_delta(double eps) { return std::min(eps / 2.0, 0.5 * eps * (1.0 - eps)); }

EpsilonReport epsilon_bound_check(int max_n, double eps, double delta,
                                  std::span<const double> grid) {
  if (max_n < 2) throw std::invalid_argument("epsilon check needs max_n >= 2");
  if (!(eps > 0.0 && eps < 1.0 / max_n)) throw std::invalid_argument("need 0 < eps < 1/N");
  const ScaleMixtureModel model(delta);
  EpsilonReport rep;
  auto consider = [&rep](double dev, int n, int k, double x) {
    if (dev > rep.worst_deviation) {
      rep.worst_deviation = dev;
      rep.worst_n = n;
      rep.worst_k = k;
      rep.worst_x = x;
    }
  };
  for (int n = 2; n <= max_n; ++n) {
    for (int k = 1; k < n; ++k) {
      const PileConfig cfg(n, k);
      const double target = cfg.ratio();
      consider(std::abs(pi_limit_at_zero(cfg, model) - target), n, k, 0.0);
      consider(std::abs(pi_plateau(cfg, model) - target), n, k, 1.0);
      for (double x : grid) {
        if (x > 0.0) consider(std::abs(pi_nk(x, cfg, model) - target), n, k, x);
      }
    }
  }
  rep.passed = rep.worst_deviation < eps;
  return rep;
}

// -- deals ----------------------------------------------------------------

double TwoPileDeal::a() const { return std::exp(log_a); }
double TwoPileDeal::log_value(std::size_t i) const { return log_a + std::log(u.at(i)); }
double TwoPileDeal::value(std::size_t i) const { return std::exp(log_value(i)); }

std::vector<double> TwoPileDeal::alice_values() const {
  std::vector<double> out;
  for (int i = 0; i < k; ++i) out.push_back(value(static_cast<std::size_t>(i)));
  return out;
}

std::vector<double> TwoPileDeal::bob_pile_values() const {
  std::vector<double> out;
  for (std::size_t i = static_cast<std::size_t>(k); i < u.size(); ++i) out.push_back(value(i));
  return out;
}

std::size_t TwoPileDeal::alice_max_index() const {
  return static_cast<std::size_t>(std::max_element(u.begin(), u.begin() + k) - u.begin());
}

std::size_t TwoPileDeal::bob_max_index() const {
  return static_cast<std::size_t>(std::max_element(u.begin() + k, u.end()) - u.begin());
}

double TwoPileDeal::x() const { return value(alice_max_index()); }
double TwoPileDeal::y() const { return value(bob_max_index()); }
double TwoPileDeal::log_x() const { return log_value(alice_max_index()); }
bool TwoPileDeal::alice_holds_max() const { return u[alice_max_index()] > u[bob_max_index()]; }

TwoPileDeal deal(const PileConfig& cfg, const ScaleMixtureModel& model, RngStream& rng) {
  TwoPileDeal d;
  d.k = cfg.k();
  d.log_a = h_log_inverse_cdf(rng.uniform_open(), model);
  d.u.resize(static_cast<std::size_t>(cfg.n()));
  for (auto& v : d.u) v = rng.uniform_open();
  return d;
}

TwoPileDeal deal_iid(const PileConfig& cfg, RngStream& rng) {
  TwoPileDeal d;
  d.k = cfg.k();
  d.u.resize(static_cast<std::size_t>(cfg.n()));
  for (auto& v : d.u) v = rng.uniform_open();
  return d;
}

bool best_response_decision(const TwoPileDeal& d, const PileConfig& cfg,
                            const ScaleMixtureModel& model) {
  return pi_nk_log(d.log_x(), cfg, model) >= 0.5;
}

bool blind_decision(const PileConfig& cfg, RngStream& rng) {
  if (cfg.k() > cfg.other()) return true;
  if (cfg.k() < cfg.other()) return false;
  return rng.bernoulli(0.5);
}

bool iid_decision(const TwoPileDeal& d, const PileConfig& cfg) {
  return d.x() >= iid_median(cfg);
}

double alice_max_density(double x, const PileConfig& cfg, const ScaleMixtureModel& model) {
  if (!(x > 0.0)) throw NonPositive("density needs x > 0");
  return cfg.k() * std::pow(x, cfg.k() - 1) * g_eval(x, cfg.k(), model);
}

Probability best_response_value_quadrature(const PileConfig& cfg, const ScaleMixtureModel& model) {
  // In s = log x the density of the maximum is k x^k g_k(x) ds.
  const int k = cfg.k();
  const auto upper = [&](double s) {
    const double p = pi_nk_log(s, cfg, model);
    return std::max(p, 1.0 - p) * k * g_scaled(s, k, model);
  };
  const auto lower = [&](double t) {
    const double p = pi_nk_log(-t, cfg, model);
    return std::max(p, 1.0 - p) * k * g_scaled(-t, k, model);
  };
  const auto hi = quad::integrate_to_infinity(upper, 0.0, 1e-10);
  const auto lo = quad::integrate_to_infinity(lower, 0.0, 1e-10);
  const quad::Result total{hi.value + lo.value, hi.error + lo.error};
  return Probability{std::clamp(quad::checked(total, 1e-6, "two-pile best response"), 0.0, 1.0)};
}

Probability game_value(const PileConfig& cfg) {
  return Probability{std::max(cfg.ratio(), 1.0 - cfg.ratio())};
}

std::string format_from_log(double log_value) {
  if (std::isinf(log_value)) return log_value < 0 ? "0" : "inf";
  const double l10 = log_value / std::log(10.0);
  double exponent = std::floor(l10);
  double mantissa = std::round(std::pow(10.0, l10 - exponent) * 1e11) / 1e11;
  if (mantissa >= 10.0) {
    mantissa /= 10.0;
    exponent += 1.0;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.11fe%+.0f", mantissa, exponent);
  return buf;
}

std::string deals_csv_header(const PileConfig& cfg) {
  std::ostringstream os;
  os << "a";
  for (int i = 1; i <= cfg.n(); ++i) os << ",z_" << i;
  os << ",x,y,decision,correct";
  return os.str();
}

std::string deal_csv_row(const TwoPileDeal& d, bool decision) {
  std::ostringstream os;
  os << format_from_log(d.log_a);
  for (std::size_t i = 0; i < d.u.size(); ++i) os << ',' << format_from_log(d.log_value(i));
  os << ',' << format_from_log(d.log_value(d.alice_max_index())) << ','
     << format_from_log(d.log_value(d.bob_max_index())) << ',' << (decision ? 1 : 0) << ','
     << (decision == d.alice_holds_max() ? 1 : 0);
  return os.str();
}

}  // namespace guess::twopile

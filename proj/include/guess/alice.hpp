#pragma once

#include "guess/coverage.hpp"
#include "guess/rng.hpp"

#include <cstdint>
#include <set>
#include <span>
#include <utility>
#include <vector>

namespace guess::alice {

/// Randomised blind guessing: accept with probability p whatever is shown.
CoverageFunction blind(Probability p);

/// Pure threshold: accept iff x >= t.
CoverageFunction threshold(double t);

/// Threshold drawn from `d`; the coverage function is the CDF of T. A point
/// mass without infinity atoms collapses to a pure threshold.
CoverageFunction random_threshold(const ThresholdDistribution& d);

/// Opposite decision everywhere: 1 - F.
CoverageFunction dual(const CoverageFunction& f);

/// Mixture of the strategy (weight gamma) and its dual (weight 1 - gamma):
/// F_gamma = gamma F + (1 - gamma)(1 - F).
CoverageFunction gamma_mixture(const CoverageFunction& f, Probability gamma);

/// Convex combination gamma * first + (1 - gamma) * second.
CoverageFunction mixture(const CoverageFunction& first,
                         const CoverageFunction& second, Probability gamma);

/// Knots must have strictly increasing abscissae and values in [0, 1].
CoverageFunction piecewise_linear(std::vector<std::pair<double, double>> knots);

/// Coverage of P + [0, 1] for a Poisson process P: F(x) = 1 - exp(-mean
/// count of atoms in [x - 1, x]). The homogeneous case is a constant.
CoverageFunction poisson_coverage(const PoissonIntensity& intensity);

CoverageFunction lattice(const LatticeRandomSet& set);

/// Lattice window [lo, hi] with F(j) = 1 / (1 + q^j); strictly increasing
/// inside the window for 0 < q < 1.
LatticeRandomSet q_deformed_lattice(double q, std::int64_t lo, std::int64_t hi);

struct Interval {
  double lo;
  double hi;
};

/// One realisation of P + [0, 1] restricted to [lo, hi]. Atoms are sampled
/// on [lo - 1, hi] so coverage at the left edge is not biased. Returned
/// intervals are disjoint and sorted.
std::vector<Interval> sample_poisson_decision_set(const PoissonIntensity& intensity,
                                                  double lo, double hi,
                                                  RngStream& rng);

bool covers(std::span<const Interval> set, double x);

/// Independent Bernoulli inclusion of every site in the window.
std::set<std::int64_t> lattice_bernoulli(const LatticeRandomSet& set, RngStream& rng);

struct Classification {
  Tri minimax = Tri::unknown;             // nondecreasing coverage
  Tri strongly_dominant = Tri::unknown;   // strictly increasing coverage
  Tri proper = Tri::unknown;
  Tri superminimax = Tri::unknown;        // strictly increasing and proper
  /// Grid evidence was consistent but could not settle every flag.
  bool unknown_classification = false;
};

/// Certified flags are returned as is. Unknown flags are tested on the
/// sorted grid, which can refute monotonicity or properness but never
/// certify them. Throws std::invalid_argument on an unsorted or short grid.
Classification classify(const CoverageFunction& f, std::span<const double> grid);

inline constexpr double kProperTolerance = 1e-6;

}  // namespace guess::alice

#include "guess/bob.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace guess {

DiscreteBobStrategy::DiscreteBobStrategy(std::vector<PairEntry> entries, std::string description)
    : entries_(std::move(entries)), description_(std::move(description)) {
  if (entries_.empty()) throw std::invalid_argument("discrete strategy has no pairs");
  Rational total{0};
  double running = 0.0;
  cumulative_.reserve(entries_.size());
  for (const auto& e : entries_) {
    if (!(e.a < e.b)) {
      std::ostringstream os;
      os << "pair must satisfy a < b, got (" << e.a << ", " << e.b << ")";
      throw InvalidPair(os.str());
    }
    if (e.weight < 0 || e.weight > 1) throw std::invalid_argument("pair weight outside [0, 1]");
    total += e.weight;
    running += to_double(e.weight);
    cumulative_.push_back(running);
  }
  if (std::abs(to_double(total) - 1.0) > 1e-12) {
    throw std::invalid_argument("pair weights must sum to one");
  }
  cumulative_.back() = 1.0;
}

bool DiscreteBobStrategy::exchangeable() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const PairEntry& e) { return e.arrangement == Arrangement::random; });
}

NumberPair DiscreteBobStrategy::sample(RngStream& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                         entries_.size() - 1);
  const PairEntry& e = entries_[idx];
  switch (e.arrangement) {
    case Arrangement::show_lower: return {e.a, e.b};
    case Arrangement::show_upper: return {e.b, e.a};
    default: return rng.bernoulli(0.5) ? NumberPair{e.b, e.a} : NumberPair{e.a, e.b};
  }
}

NumberPair sample(const BobStrategy& bob, RngStream& rng) {
  return std::visit([&rng](const auto& b) { return b.sample(rng); }, bob);
}

const std::string& description(const BobStrategy& bob) {
  return std::visit(
      [](const auto& b) -> const std::string& {
        if constexpr (std::is_same_v<std::decay_t<decltype(b)>, DiscreteBobStrategy>) {
          return b.description();
        } else {
          return b.description;
        }
      },
      bob);
}

bool exchangeable(const BobStrategy& bob) {
  if (const auto* d = std::get_if<DiscreteBobStrategy>(&bob)) return d->exchangeable();
  return std::get<ContinuousBobStrategy>(bob).exchangeable;
}

namespace bob {

DiscreteBobStrategy pure_pair(double a, double b) {
  std::ostringstream os;
  os << "pure pair {" << a << ", " << b << "}";
  return {{{a, b, Rational{1}}}, os.str()};
}

DiscreteBobStrategy consecutive_uniform(std::int64_t m) {
  return scaled_consecutive(m, 1);
}

DiscreteBobStrategy scaled_consecutive(std::int64_t m, std::int64_t k) {
  if (m < 1 || k < 1) throw std::invalid_argument("consecutive pairs need m, k >= 1");
  std::vector<PairEntry> entries;
  entries.reserve(static_cast<std::size_t>(m));
  const Rational w = make_rational(1, m);
  for (std::int64_t beta = 1; beta <= m; ++beta) {
    entries.push_back({static_cast<double>(beta), static_cast<double>(beta + k), w});
  }
  std::ostringstream os;
  if (k == 1) {
    os << "consecutive uniform m=" << m;
  } else {
    os << "gap-k pairs m=" << m << " k=" << k;
  }
  return {std::move(entries), os.str()};
}

DiscreteBobStrategy modular_three(const std::map<std::int64_t, Rational>& weights) {
  std::vector<PairEntry> entries;
  for (const auto& [j, w] : weights) {
    if (w == 0) continue;
    entries.push_back({3.0 * static_cast<double>(j), 3.0 * static_cast<double>(j) + 1.0, w});
  }
  return {std::move(entries), "pairs {3j, 3j+1}"};
}

DiscreteBobStrategy zero_pm_one() {
  const Rational half = make_rational(1, 2);
  return {{{-1.0, 0.0, half, Arrangement::show_upper}, {0.0, 1.0, half, Arrangement::show_lower}},
          "shown 0, hidden +-1 (unconstrained)"};
}

}  // namespace bob
}  // namespace guess

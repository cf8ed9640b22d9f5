#pragma once

#include <cstdint>
#include <random>

namespace guess {

/// Reproducible random stream identified by (seed, stream id).
///
/// The two words are mixed through splitmix64 before seeding the engine, so
/// neighbouring stream ids give unrelated sequences. Streams are cheap
/// enough to derive one per shard or per round.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on the open interval (0, 1); safe to take logs of.
  double uniform_open();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  double normal(double mean, double sd);
  double exponential(double rate);

  /// Derive a child stream; used for shard and per-round streams.
  RngStream derive(std::uint64_t child_id) const;

  // UniformRandomBitGenerator interface, for std:: distributions and
  // std::shuffle.
  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace guess

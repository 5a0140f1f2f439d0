#pragma once

#include <cstdint>
#include <random>

namespace glab {

/// SplitMix64 finaliser applied to seed ^ golden-ratio-scrambled stream id.
/// Replica r of an experiment with seed s draws from RngStream(s, r).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Deterministic random stream: identical (seed, stream) pairs produce
/// identical draw sequences on every platform (mt19937_64 is fully specified;
/// the bounded and real draws below avoid the implementation-defined
/// std distributions).
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// True with probability 1/denominator.
  bool one_in(std::uint64_t denominator) { return below(denominator) == 0; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace glab

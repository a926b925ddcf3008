#pragma once

#include <cstdint>
#include <random>

namespace ttrpca {

/// One SplitMix64 step; used to derive independent seeds from a base seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic random source. All draws are fixed arithmetic on top of
/// std::mt19937_64, so sequences do not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform();

  /// Standard normal draw (Box-Muller).
  double normal();

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// -1.0 or +1.0 with equal probability.
  double sign();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ttrpca

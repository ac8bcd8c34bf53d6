#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace nsbm {

/// splitmix64 finalizer. Used only for seed derivation.
std::uint64_t mix_seed(std::uint64_t x) noexcept;

/// Seed of the child source for run `run_index` of a batch seeded with `master_seed`.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t run_index) noexcept;

// Reproducible random source.
//
// Engine: std::mt19937_64 constructed from a single 64-bit seed. Its output
// sequence is fixed by the C++ standard, and every derived variate below is
// computed here rather than through <random> distributions, so a seed gives
// the same stream on every conforming toolchain.
//
// Single owner. Give each concurrent run its own source (see child()).
class RandomSource {
 public:
  using result_type = std::uint64_t;

  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static RandomSource child(std::uint64_t master_seed, std::uint64_t run_index) {
    return RandomSource(derive_seed(master_seed, run_index));
  }

  static constexpr result_type min() { return std::numeric_limits<result_type>::min(); }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t seed() const noexcept { return seed_; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform on the open interval (0, 1).
  double uniform_open();
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal variate (Marsaglia polar method, spare discarded).
  double normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace nsbm

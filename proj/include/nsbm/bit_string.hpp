#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nsbm/random.hpp"

namespace nsbm {

// Fixed-length bit string packed into 64-bit words. Bit i lives in word i/64
// at position i%64; bits past size() in the last word are always zero.
class BitString {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitString() = default;
  /// All-zero string of length n.
  explicit BitString(std::size_t n);

  /// Parses a string of '0'/'1' characters, position 0 first.
  static BitString from_string(std::string_view bits);
  static BitString ones(std::size_t n);
  /// Takes ceil(n/64) words; bits past n are cleared.
  static BitString from_words(std::size_t n, std::vector<Word> words);

  std::size_t size() const noexcept { return size_; }
  bool operator[](std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  void set(std::size_t i, bool value) noexcept;
  void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }
  /// Flips every bit.
  void complement() noexcept;

  /// Number of one-bits.
  std::size_t count() const noexcept;
  /// Length of the maximal all-ones prefix.
  std::size_t leading_ones() const noexcept;

  /// Copies the bits of `other`, which must have the same length.
  void assign(const BitString& other) noexcept;

  std::string to_string() const;
  const std::vector<Word>& words() const noexcept { return words_; }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  void clear_tail() noexcept;

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

/// Number of positions where x and y differ. Throws std::invalid_argument on length mismatch.
std::size_t hamming(const BitString& x, const BitString& y);

/// Uniform random point of {0,1}^n. Throws std::invalid_argument for n = 0.
BitString new_uniform(std::size_t n, RandomSource& rng);

/// Writes into `out` a copy of `x` with exactly `strength` distinct, uniformly
/// chosen positions flipped. `out` is resized as needed and may be reused
/// across calls to avoid allocation.
void mutate_into(const BitString& x, std::size_t strength, RandomSource& rng, BitString& out);

/// Returns a copy of `x` with exactly `strength` distinct uniform positions
/// flipped. Throws std::invalid_argument unless 1 <= strength <= x.size().
BitString mutate(const BitString& x, std::size_t strength, RandomSource& rng);

}  // namespace nsbm

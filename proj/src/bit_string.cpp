#include "nsbm/bit_string.hpp"

#include <bit>
#include <stdexcept>
#include <utility>

namespace nsbm {

namespace {

std::size_t word_count(std::size_t n) { return (n + BitString::kWordBits - 1) / BitString::kWordBits; }

}  // namespace

BitString::BitString(std::size_t n) : size_(n), words_(word_count(n), Word{0}) {}

BitString BitString::from_string(std::string_view bits) {
  BitString out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      out.set(i, true);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("BitString::from_string: expected only '0' and '1'");
    }
  }
  return out;
}

BitString BitString::ones(std::size_t n) {
  BitString out(n);
  out.complement();
  return out;
}

BitString BitString::from_words(std::size_t n, std::vector<Word> words) {
  if (words.size() != word_count(n)) throw std::invalid_argument("BitString::from_words: wrong word count");
  BitString out;
  out.size_ = n;
  out.words_ = std::move(words);
  out.clear_tail();
  return out;
}

void BitString::set(std::size_t i, bool value) noexcept {
  const Word mask = Word{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

void BitString::complement() noexcept {
  for (auto& w : words_) w = ~w;
  clear_tail();
}

void BitString::clear_tail() noexcept {
  const std::size_t rem = size_ % kWordBits;
  if (rem != 0) words_.back() &= (Word{1} << rem) - 1;
}

std::size_t BitString::count() const noexcept {
  std::size_t total = 0;
  for (const auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::size_t BitString::leading_ones() const noexcept {
  std::size_t total = 0;
  for (const auto w : words_) {
    if (w != ~Word{0}) return total + static_cast<std::size_t>(std::countr_one(w));
    total += kWordBits;
  }
  return size_;
}

void BitString::assign(const BitString& other) noexcept {
  size_ = other.size_;
  words_.assign(other.words_.begin(), other.words_.end());
}

std::string BitString::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) out[i] = '1';
  }
  return out;
}

std::size_t hamming(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) throw std::invalid_argument("hamming: length mismatch");
  std::size_t total = 0;
  const auto& a = x.words();
  const auto& b = y.words();
  for (std::size_t i = 0; i < a.size(); ++i) total += static_cast<std::size_t>(std::popcount(a[i] ^ b[i]));
  return total;
}

BitString new_uniform(std::size_t n, RandomSource& rng) {
  if (n == 0) throw std::invalid_argument("new_uniform: dimension must be at least 1");
  // One engine word per 64 positions, consumed in index order.
  std::vector<BitString::Word> words(word_count(n));
  for (auto& w : words) w = rng();
  return BitString::from_words(n, std::move(words));
}

void mutate_into(const BitString& x, std::size_t strength, RandomSource& rng, BitString& out) {
  const std::size_t n = x.size();
  if (strength < 1 || strength > n) throw std::invalid_argument("mutate: strength must lie in [1, n]");
  out.assign(x);
  // Sequential draws without replacement give a uniform ordered sample, hence
  // a uniform subset. For strength > n/2 pick the positions left untouched.
  if (2 * strength <= n) {
    for (std::size_t done = 0; done < strength;) {
      const auto pos = static_cast<std::size_t>(rng.below(n));
      if (out[pos] == x[pos]) {
        out.flip(pos);
        ++done;
      }
    }
  } else {
    out.complement();
    for (std::size_t kept = 0; kept < n - strength;) {
      const auto pos = static_cast<std::size_t>(rng.below(n));
      if (out[pos] != x[pos]) {
        out.flip(pos);
        ++kept;
      }
    }
  }
}

BitString mutate(const BitString& x, std::size_t strength, RandomSource& rng) {
  BitString out;
  mutate_into(x, strength, rng, out);
  return out;
}

}  // namespace nsbm

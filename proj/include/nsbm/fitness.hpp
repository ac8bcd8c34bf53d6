#pragma once

#include <cstdint>
#include <string_view>

#include "nsbm/bit_string.hpp"
#include "nsbm/fixed_target_log.hpp"

namespace nsbm {

enum class Problem { OneMax, LeadingOnes };

std::string_view to_string(Problem problem) noexcept;
/// Accepts "onemax" and "leadingones". Throws std::invalid_argument otherwise.
Problem parse_problem(std::string_view name);

/// Number of one-bits.
inline int onemax(const BitString& x) noexcept { return static_cast<int>(x.count()); }
/// Length of the maximal all-ones prefix.
inline int leadingones(const BitString& x) noexcept { return static_cast<int>(x.leading_ones()); }

inline int fitness(Problem problem, const BitString& x) noexcept {
  return problem == Problem::OneMax ? onemax(x) : leadingones(x);
}

class EvalCounter {
 public:
  std::uint64_t count() const noexcept { return count_; }
  std::uint64_t tick() noexcept { return ++count_; }

 private:
  std::uint64_t count_ = 0;
};

// Counting wrapper around a benchmark function. The single place where
// evaluations are counted, budgets enforced, and fixed-target hits logged.
class Evaluator {
 public:
  Evaluator(Problem problem, int n, std::uint64_t budget);

  /// Evaluates x. Throws std::logic_error when called after done().
  int operator()(const BitString& x);

  /// Budget exhausted or optimum evaluated.
  bool done() const noexcept { return counter_.count() >= budget_ || log_.reached_max() == n_; }
  std::uint64_t evaluations() const noexcept { return counter_.count(); }
  std::uint64_t budget() const noexcept { return budget_; }
  Problem problem() const noexcept { return problem_; }
  int dimension() const noexcept { return n_; }

  const FixedTargetLog& log() const noexcept { return log_; }
  FixedTargetLog take_log() && { return std::move(log_); }

 private:
  Problem problem_;
  int n_;
  std::uint64_t budget_;
  EvalCounter counter_;
  FixedTargetLog log_;
};

}  // namespace nsbm

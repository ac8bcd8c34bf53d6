#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "nsbm/fitness.hpp"
#include "nsbm/random.hpp"

namespace nsbm {

// Strength k(v) in [1, n] for every non-optimal fitness value v in [0, n-1].
class StrengthTable {
 public:
  /// Throws std::invalid_argument if strengths.size() != n or an entry is outside [1, n].
  StrengthTable(int n, std::vector<int> strengths);
  static StrengthTable constant(int n, int strength);

  int dimension() const noexcept { return n_; }
  /// Throws std::out_of_range outside [0, n-1].
  int operator()(int v) const;
  const std::vector<int>& strengths() const noexcept { return strengths_; }

 private:
  int n_;
  std::vector<int> strengths_;
};

/// Hypergeometric law of the number of flipped zero-bits when k distinct bits
/// are flipped at OneMax value v; entry m is the probability of m.
std::vector<double> onemax_flip_distribution(int n, int v, int k);

/// Expected fitness gain of one elitist k-bit flip at OneMax value v
/// (worsening moves count as 0). Throws std::domain_error outside 0<=v<=n, 1<=k<=n.
double onemax_drift(int n, int v, int k);

/// Drift-maximizing strength at v < n; ties go to the smaller k.
int onemax_k_drift(int n, int v);
StrengthTable onemax_drift_table(int n);

/// Probability that a k-bit flip strictly improves LeadingOnes value i:
/// C(n-i-1, k-1) / C(n, k), and 0 for k > n - i.
double lo_improve_prob(int n, int i, int k);

/// Improvement-probability-maximizing strength at i < n; ties go to the smaller k.
int lo_k_opt(int n, int i);
StrengthTable lo_opt_table(int n);

/// Probability that the elitist (1+1) scheme started from a uniform point ever
/// has LeadingOnes value i, for i in [0, n-1]. Independent of the strengths used.
std::vector<double> lo_visit_probabilities(int n);

/// Exact expected number of iterations (the initial evaluation excluded) of
/// the elitist (1+1) algorithm flipping table(i) bits at LeadingOnes value i.
/// Throws std::domain_error if some level can never be left.
double lo_expected_time(int n, const StrengthTable& table);

/// Exact share of the expected LeadingOnes optimization time spent at levels
/// where regime(i) == 1, for the algorithm flipping search(i) bits.
double lo_regime_fraction_exact(int n, const StrengthTable& regime, const StrengthTable& search);

/// Empirical share of evaluations spent at fitness values v with regime(v) == 1,
/// pooled over `runs` runs of the elitist (1+1) algorithm that flips search(v)
/// bits, or one bit (RLS) when search is null.
double regime_fraction(Problem problem, int n, const StrengthTable& regime, const StrengthTable* search, int runs,
                       RandomSource& rng);

/// CSV with header v,k,drift_or_prob: the table strength and its drift
/// (OneMax) or improvement probability (LeadingOnes).
void write_strength_table_csv(std::ostream& out, Problem problem, const StrengthTable& table);

}  // namespace nsbm

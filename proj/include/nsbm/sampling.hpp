#pragma once

#include <variant>

#include "nsbm/random.hpp"

namespace nsbm {

/// Bin(n, p). Requires n >= 0 and 0 <= p <= 1.
int sample_binomial(int n, double p, RandomSource& rng);

/// Bin(n, p) conditioned on a positive outcome: mass
/// C(n,k) p^k (1-p)^(n-k) / (1 - (1-p)^n) at k in [1, n].
/// Throws std::invalid_argument unless n >= 1 and 0 < p <= 1.
int sample_cond_binomial(int n, double p, RandomSource& rng);

/// Normal(mu, var) rounded to the nearest integer (halves away from zero),
/// redrawn while the rounded value is below 1, then capped at n.
/// With var == 0 the result is min(max(round(mu), 1), n).
/// Throws std::invalid_argument for var < 0, non-finite mu, or n < 1.
int sample_cond_normal(double mu, double var, int n, RandomSource& rng);

/// Rate p uniform on (0, sigma * r / n), clamped at 1.
/// Throws std::invalid_argument unless sigma > 0, r > 0, n >= 1.
double sample_uniform_rate(double sigma, double r, int n, RandomSource& rng);

// How a mutation strength is drawn.
struct Deterministic {
  int strength;
};
struct CondBinomial {
  int n;
  double rate;
};
struct CondNormal {
  double mean;
  double variance;
  int n;
};
// Rate drawn by sample_uniform_rate, then strength by sample_cond_binomial.
struct UniformRate {
  double sigma;
  double r;
  int n;
};

using StrengthDistribution = std::variant<Deterministic, CondBinomial, CondNormal, UniformRate>;

/// Draws one strength from `dist`. Every result lies in [1, n].
int sample_strength(const StrengthDistribution& dist, RandomSource& rng);

}  // namespace nsbm

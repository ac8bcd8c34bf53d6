#include "nsbm/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace nsbm {

namespace {

// Number of successes in n Bernoulli(p) trials by geometric skipping over the
// failures; expected cost O(np + 1). Requires 0 < p <= 1/2.
int binomial_by_skips(int n, double p, RandomSource& rng) {
  const double log_fail = std::log1p(-p);
  int successes = 0;
  double position = -1.0;
  for (;;) {
    position += 1.0 + std::floor(std::log(rng.uniform_open()) / log_fail);
    if (position >= n) return successes;
    ++successes;
  }
}

// Standard normal truncated to [a, inf) for a > 0 (Robert 1995,
// exponential proposal with the optimal rate).
double truncated_standard_normal(double a, RandomSource& rng) {
  const double rate = 0.5 * (a + std::sqrt(a * a + 4.0));
  for (;;) {
    const double z = a - std::log(rng.uniform_open()) / rate;
    const double d = z - rate;
    if (rng.uniform01() <= std::exp(-0.5 * d * d)) return z;
  }
}

}  // namespace

int sample_binomial(int n, double p, RandomSource& rng) {
  if (n < 0 || !(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_binomial: need n >= 0 and p in [0, 1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (p > 0.5) return n - binomial_by_skips(n, 1.0 - p, rng);
  return binomial_by_skips(n, p, rng);
}

int sample_cond_binomial(int n, double p, RandomSource& rng) {
  if (n < 1) throw std::invalid_argument("sample_cond_binomial: dimension must be at least 1");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("sample_cond_binomial: rate must lie in (0, 1]");
  if (p == 1.0) return n;
  if (p >= 0.5) {
    // P(0) <= 2^-n, plain rejection is cheap.
    int k;
    do {
      k = sample_binomial(n, p, rng);
    } while (k == 0);
    return k;
  }
  // Index J of the first success, conditioned on J < n, by inverting the
  // truncated geometric CDF; the remaining n-J-1 trials are unconstrained.
  const double log_fail = std::log1p(-p);
  const double any_success = -std::expm1(n * log_fail);
  const double u = rng.uniform01();
  double first = std::floor(std::log1p(-u * any_success) / log_fail);
  if (first > n - 1) first = n - 1;
  const int j = static_cast<int>(first);
  return 1 + sample_binomial(n - j - 1, p, rng);
}

int sample_cond_normal(double mu, double var, int n, RandomSource& rng) {
  if (n < 1) throw std::invalid_argument("sample_cond_normal: dimension must be at least 1");
  if (!std::isfinite(mu)) throw std::invalid_argument("sample_cond_normal: mean must be finite");
  if (!(var >= 0.0) || !std::isfinite(var)) throw std::invalid_argument("sample_cond_normal: variance must be >= 0");
  const auto cap = static_cast<double>(n);
  if (var == 0.0) {
    const double k = std::round(mu);
    if (k < 1.0) return 1;
    return k > cap ? n : static_cast<int>(k);
  }
  const double sd = std::sqrt(var);
  // round(g) >= 1 exactly when g >= 0.5.
  const double threshold = (0.5 - mu) / sd;
  double k;
  if (threshold <= 0.0) {
    do {
      k = std::round(mu + sd * rng.normal());
    } while (k < 1.0);
  } else {
    do {
      k = std::round(mu + sd * truncated_standard_normal(threshold, rng));
    } while (k < 1.0);
  }
  return k > cap ? n : static_cast<int>(k);
}

double sample_uniform_rate(double sigma, double r, int n, RandomSource& rng) {
  if (!(sigma > 0.0) || !(r > 0.0) || n < 1) {
    throw std::invalid_argument("sample_uniform_rate: need sigma > 0, r > 0, n >= 1");
  }
  const double upper = sigma * r / n;
  double p;
  do {
    p = rng.uniform_open() * upper;
  } while (p == 0.0);
  return p < 1.0 ? p : 1.0;
}

int sample_strength(const StrengthDistribution& dist, RandomSource& rng) {
  struct Visitor {
    RandomSource& rng;
    int operator()(const Deterministic& d) const {
      if (d.strength < 1) throw std::invalid_argument("Deterministic strength must be at least 1");
      return d.strength;
    }
    int operator()(const CondBinomial& d) const { return sample_cond_binomial(d.n, d.rate, rng); }
    int operator()(const CondNormal& d) const { return sample_cond_normal(d.mean, d.variance, d.n, rng); }
    int operator()(const UniformRate& d) const {
      return sample_cond_binomial(d.n, sample_uniform_rate(d.sigma, d.r, d.n, rng), rng);
    }
  };
  return std::visit(Visitor{rng}, dist);
}

}  // namespace nsbm

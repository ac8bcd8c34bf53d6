#include "nsbm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "nsbm/algorithms.hpp"

namespace nsbm {

namespace {

double log_choose(int a, int b) {
  return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

void check_onemax_args(int n, int v, int k) {
  if (n < 1 || v < 0 || v > n || k < 1 || k > n) {
    throw std::domain_error("onemax oracle: need 0 <= v <= n and 1 <= k <= n");
  }
}

// Relative size below which hypergeometric tail terms are dropped. The pmf
// is log-concave, so terms decrease monotonically away from the mode.
constexpr double kTailCutoff = 1e-18;

}  // namespace

StrengthTable::StrengthTable(int n, std::vector<int> strengths) : n_(n), strengths_(std::move(strengths)) {
  if (n < 1 || strengths_.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("StrengthTable: need one entry per fitness value in [0, n-1]");
  }
  for (const int k : strengths_) {
    if (k < 1 || k > n) throw std::invalid_argument("StrengthTable: entries must lie in [1, n]");
  }
}

StrengthTable StrengthTable::constant(int n, int strength) {
  return StrengthTable(n, std::vector<int>(static_cast<std::size_t>(std::max(n, 0)), strength));
}

int StrengthTable::operator()(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("StrengthTable: fitness value outside [0, n-1]");
  return strengths_[static_cast<std::size_t>(v)];
}

std::vector<double> onemax_flip_distribution(int n, int v, int k) {
  check_onemax_args(n, v, k);
  const int zeros = n - v;
  std::vector<double> pmf(static_cast<std::size_t>(k) + 1, 0.0);
  const int lo = std::max(0, k - v);
  const int hi = std::min(k, zeros);
  const double log_total = log_choose(n, k);
  for (int m = lo; m <= hi; ++m) {
    pmf[static_cast<std::size_t>(m)] = std::exp(log_choose(zeros, m) + log_choose(v, k - m) - log_total);
  }
  return pmf;
}

double onemax_drift(int n, int v, int k) {
  check_onemax_args(n, v, k);
  const int zeros = n - v;
  const int lo = std::max(0, k - v);
  const int hi = std::min(k, zeros);
  // Only m > k/2 zero-flips improve; none exist when 2*hi <= k.
  if (2 * hi <= k) return 0.0;

  const auto mode_guess = static_cast<int>((static_cast<double>(k) + 1.0) * (zeros + 1.0) / (n + 2.0));
  const int mode = std::clamp(mode_guess, lo, hi);
  const double p_mode =
      std::exp(log_choose(zeros, mode) + log_choose(v, k - mode) - log_choose(n, k));

  auto gain = [k](int m) { return 2 * m - k > 0 ? static_cast<double>(2 * m - k) : 0.0; };

  double drift = gain(mode) * p_mode;
  double p = p_mode;
  for (int m = mode; m < hi; ++m) {
    p *= static_cast<double>(zeros - m) * (k - m) / ((m + 1.0) * (v - k + m + 1.0));
    drift += gain(m + 1) * p;
    if (p < kTailCutoff * p_mode) break;
  }
  p = p_mode;
  for (int m = mode; m > lo && 2 * (m - 1) > k; --m) {
    p *= static_cast<double>(m) * (v - k + m) / ((zeros - m + 1.0) * (k - m + 1.0));
    drift += gain(m - 1) * p;
    if (p < kTailCutoff * p_mode) break;
  }
  return drift;
}

int onemax_k_drift(int n, int v) {
  if (n < 1 || v < 0 || v >= n) throw std::domain_error("onemax_k_drift: need 0 <= v < n");
  // For k >= 2(n-v) every outcome has gain <= 0.
  const int k_max = std::min(n, 2 * (n - v));
  int best_k = 1;
  double best = onemax_drift(n, v, 1);
  for (int k = 2; k <= k_max; ++k) {
    const double d = onemax_drift(n, v, k);
    if (d > best * (1.0 + 1e-12)) {
      best = d;
      best_k = k;
    }
  }
  return best_k;
}

StrengthTable onemax_drift_table(int n) {
  std::vector<int> k(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) k[static_cast<std::size_t>(v)] = onemax_k_drift(n, v);
  return StrengthTable(n, std::move(k));
}

double lo_improve_prob(int n, int i, int k) {
  if (n < 1 || i < 0 || i >= n || k < 1 || k > n) {
    throw std::domain_error("lo_improve_prob: need 0 <= i < n and 1 <= k <= n");
  }
  if (k > n - i) return 0.0;
  // C(n-i-1, k-1) / C(n, k) = (k/n) * prod_{j<k-1} (n-i-1-j) / (n-1-j)
  double p = static_cast<double>(k) / n;
  for (int j = 0; j < k - 1; ++j) p *= static_cast<double>(n - i - 1 - j) / (n - 1 - j);
  return p;
}

int lo_k_opt(int n, int i) {
  if (n < 1 || i < 0 || i >= n) throw std::domain_error("lo_k_opt: need 0 <= i < n");
  int best_k = 1;
  double best = lo_improve_prob(n, i, 1);
  double p = best;
  for (int k = 1; k < n - i; ++k) {
    p *= (k + 1.0) * (n - i - k) / (static_cast<double>(k) * (n - k));
    if (p > best * (1.0 + 1e-12)) {
      best = p;
      best_k = k + 1;
    }
  }
  return best_k;
}

StrengthTable lo_opt_table(int n) {
  std::vector<int> k(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) k[static_cast<std::size_t>(i)] = lo_k_opt(n, i);
  return StrengthTable(n, std::move(k));
}

std::vector<double> lo_visit_probabilities(int n) {
  if (n < 1) throw std::domain_error("lo_visit_probabilities: need n >= 1");
  // A uniform start has value i w.p. 2^-(i+1). Bits behind the prefix stay
  // uniform, so leaving level j lands on i > j w.p. 2^-(i-j).
  std::vector<double> visit(static_cast<std::size_t>(n));
  double carried = 0.0;  // sum_{j<i} visit[j] 2^-(i-j)
  for (int i = 0; i < n; ++i) {
    if (i > 0) carried = 0.5 * (carried + visit[static_cast<std::size_t>(i - 1)]);
    visit[static_cast<std::size_t>(i)] = std::ldexp(1.0, -(i + 1)) + carried;
  }
  return visit;
}

double lo_expected_time(int n, const StrengthTable& table) {
  if (table.dimension() != n) throw std::invalid_argument("lo_expected_time: table dimension mismatch");
  const auto visit = lo_visit_probabilities(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = lo_improve_prob(n, i, table(i));
    if (p <= 0.0) {
      throw std::domain_error("lo_expected_time: strength " + std::to_string(table(i)) + " can never leave level " +
                              std::to_string(i));
    }
    total += visit[static_cast<std::size_t>(i)] / p;
  }
  return total;
}

double lo_regime_fraction_exact(int n, const StrengthTable& regime, const StrengthTable& search) {
  if (regime.dimension() != n || search.dimension() != n) {
    throw std::invalid_argument("lo_regime_fraction_exact: table dimension mismatch");
  }
  const auto visit = lo_visit_probabilities(n);
  double in_regime = 0.0;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = lo_improve_prob(n, i, search(i));
    if (p <= 0.0) throw std::domain_error("lo_regime_fraction_exact: level can never be left");
    const double t = visit[static_cast<std::size_t>(i)] / p;
    total += t;
    if (regime(i) == 1) in_regime += t;
  }
  return in_regime / total;
}

double regime_fraction(Problem problem, int n, const StrengthTable& regime, const StrengthTable* search, int runs,
                       RandomSource& rng) {
  if (runs < 1) throw std::invalid_argument("regime_fraction: runs must be at least 1");
  if (regime.dimension() != n) throw std::invalid_argument("regime_fraction: table dimension mismatch");
  AlgorithmConfig cfg;
  cfg.variant = search != nullptr ? Variant::OracleRLS : Variant::RLS;
  const std::uint64_t master = rng();

  // For a (1+1) elitist run, the evaluations made while the parent has
  // value v are exactly first_hit(v+1) - first_hit(v).
  std::uint64_t in_regime = 0;
  std::uint64_t total = 0;
  for (int run_index = 0; run_index < runs; ++run_index) {
    auto child = RandomSource::child(master, static_cast<std::uint64_t>(run_index));
    const auto log = run(cfg, problem, n, child, search);
    const auto& hits = log.first_hits();
    const int top = log.reached_max();
    for (int v = 0; v < top; ++v) {
      const auto spent = hits[static_cast<std::size_t>(v) + 1] - hits[static_cast<std::size_t>(v)];
      total += spent;
      if (regime(v) == 1) in_regime += spent;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(in_regime) / static_cast<double>(total);
}

void write_strength_table_csv(std::ostream& out, Problem problem, const StrengthTable& table) {
  const int n = table.dimension();
  out << "v,k,drift_or_prob\n";
  for (int v = 0; v < n; ++v) {
    const int k = table(v);
    const double value = problem == Problem::OneMax ? onemax_drift(n, v, k) : lo_improve_prob(n, v, k);
    out << fmt::format("{},{},{}\n", v, k, value);
  }
}

}  // namespace nsbm

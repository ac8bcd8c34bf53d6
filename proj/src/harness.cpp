#include "nsbm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <thread>

#include "nsbm/oracle.hpp"

namespace nsbm {

std::vector<FixedTargetLog> execute_batch(const AlgorithmConfig& cfg, Problem problem, int n, int runs,
                                          std::uint64_t master_seed, unsigned jobs) {
  if (runs < 1) throw ConfigError("runs", "runs must be at least 1");
  cfg.validate(problem, n);

  std::optional<StrengthTable> table;
  if (cfg.variant == Variant::OracleRLS) {
    table.emplace(problem == Problem::OneMax ? onemax_drift_table(n) : lo_opt_table(n));
  }
  const StrengthTable* table_ptr = table ? &*table : nullptr;

  std::vector<FixedTargetLog> logs(static_cast<std::size_t>(runs));
  if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(runs));

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < runs; i = next++) {
      try {
        auto rng = RandomSource::child(master_seed, static_cast<std::uint64_t>(i));
        logs[static_cast<std::size_t>(i)] = run(cfg, problem, n, rng, table_ptr);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return logs;
}

double quantile(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw std::invalid_argument("quantile: empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

SummaryStats summarize(std::span<const FixedTargetLog> logs, int target) {
  SummaryStats s;
  s.target = target;
  s.runs = static_cast<int>(logs.size());
  std::vector<double> hits;
  hits.reserve(logs.size());
  for (const auto& log : logs) {
    if (const auto h = log.first_hit(target)) hits.push_back(static_cast<double>(*h));
  }
  s.count = static_cast<int>(hits.size());
  if (hits.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.aht = s.rsd = nan;
    s.quantiles.fill(nan);
    return s;
  }
  std::sort(hits.begin(), hits.end());
  // Summing the sorted sample keeps the result independent of run order.
  const double mean = std::accumulate(hits.begin(), hits.end(), 0.0) / static_cast<double>(hits.size());
  double ss = 0.0;
  for (const double h : hits) ss += (h - mean) * (h - mean);
  s.aht = mean;
  s.rsd = hits.size() > 1 ? std::sqrt(ss / static_cast<double>(hits.size() - 1)) / mean : 0.0;
  for (std::size_t q = 0; q < kQuantileProbes.size(); ++q) s.quantiles[q] = quantile(hits, kQuantileProbes[q]);
  return s;
}

double normalize_time(double aht, Problem problem, int n) {
  const double nn = n;
  return problem == Problem::OneMax ? aht / (nn * std::log(nn)) : aht / (nn * nn);
}

std::vector<CurvePoint> fixed_target_curve(std::span<const FixedTargetLog> logs, std::span<const int> targets) {
  std::vector<CurvePoint> curve;
  curve.reserve(targets.size());
  for (const int t : targets) {
    const auto s = summarize(logs, t);
    curve.push_back({t, s.count, s.aht});
  }
  return curve;
}

std::vector<double> optimization_times(std::span<const FixedTargetLog> logs) {
  std::vector<double> times;
  for (const auto& log : logs) {
    if (const auto h = log.first_hit(log.dimension())) times.push_back(static_cast<double>(*h));
  }
  return times;
}

RankSumResult rank_sum_test(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("rank_sum_test: both samples must be non-empty");
  struct Item {
    double value;
    bool first;
  };
  std::vector<Item> pooled;
  pooled.reserve(a.size() + b.size());
  for (const double x : a) pooled.push_back({x, true});
  for (const double x : b) pooled.push_back({x, false});
  std::sort(pooled.begin(), pooled.end(), [](const Item& l, const Item& r) { return l.value < r.value; });

  const auto total = static_cast<double>(pooled.size());
  double rank_sum_first = 0.0;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j].value == pooled[i].value) ++j;
    const double mid_rank = 0.5 * (static_cast<double>(i) + 1.0 + static_cast<double>(j));
    const auto tied = static_cast<double>(j - i);
    tie_term += tied * tied * tied - tied;
    for (std::size_t k = i; k < j; ++k) {
      if (pooled[k].first) rank_sum_first += mid_rank;
    }
    i = j;
  }

  const auto n1 = static_cast<double>(a.size());
  const auto n2 = static_cast<double>(b.size());
  RankSumResult r;
  r.u = rank_sum_first - n1 * (n1 + 1.0) / 2.0;
  const double mean = n1 * n2 / 2.0;
  const double var = n1 * n2 / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
  if (var <= 0.0) return r;  // all values tied
  const double sd = std::sqrt(var);
  r.z = (r.u - mean) / sd;
  const double z_less = (r.u - mean + 0.5) / sd;
  r.p_less = 0.5 * std::erfc(-z_less / std::sqrt(2.0));
  const double z_abs = std::max(0.0, std::abs(r.u - mean) - 0.5) / sd;
  r.p_two_sided = std::min(1.0, std::erfc(z_abs / std::sqrt(2.0)));
  return r;
}

}  // namespace nsbm

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "nsbm/algorithms.hpp"
#include "nsbm/fixed_target_log.hpp"

namespace nsbm {

/// Quantile probes of the summary tables.
inline constexpr std::array<double, 7> kQuantileProbes = {0.02, 0.10, 0.25, 0.50, 0.75, 0.90, 0.98};

/// `runs` independent runs; run i uses RandomSource::child(master_seed, i).
/// Results are indexed by run and do not depend on `jobs` (0 = all cores).
std::vector<FixedTargetLog> execute_batch(const AlgorithmConfig& cfg, Problem problem, int n, int runs,
                                          std::uint64_t master_seed, unsigned jobs = 0);

struct SummaryStats {
  int target = 0;
  int runs = 0;
  /// Runs that reached the target. Statistics below cover only those runs.
  int count = 0;
  /// NaN when count == 0.
  double aht = 0.0;
  /// Sample standard deviation (n-1 denominator) over aht; 0 for a single run.
  double rsd = 0.0;
  std::array<double, 7> quantiles{};

  bool empty() const noexcept { return count == 0; }
  bool censored() const noexcept { return count < runs; }
};

/// Linear interpolation between closest order statistics (type 7).
/// `sorted` must be non-empty and ascending.
double quantile(std::span<const double> sorted, double prob);

SummaryStats summarize(std::span<const FixedTargetLog> logs, int target);

/// aht / (n ln n) for OneMax, aht / n^2 for LeadingOnes.
double normalize_time(double aht, Problem problem, int n);

struct CurvePoint {
  int target = 0;
  int count = 0;
  double aht = 0.0;
};

/// AHT per target over the runs that reached it.
std::vector<CurvePoint> fixed_target_curve(std::span<const FixedTargetLog> logs, std::span<const int> targets);

/// Evaluations to the optimum of every run that reached it.
std::vector<double> optimization_times(std::span<const FixedTargetLog> logs);

struct RankSumResult {
  double u = 0.0;  // Mann-Whitney U of the first sample
  double z = 0.0;  // normal approximation, tie-corrected, continuity-corrected
  /// P-value of H1 "first sample tends to be smaller".
  double p_less = 1.0;
  double p_two_sided = 1.0;
};

/// Wilcoxon rank-sum / Mann-Whitney U test with the normal approximation.
RankSumResult rank_sum_test(std::span<const double> a, std::span<const double> b);

}  // namespace nsbm

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nsbm/fitness.hpp"
#include "nsbm/fixed_target_log.hpp"
#include "nsbm/harness.hpp"

namespace nsbm {

struct SummaryRow {
  std::string algorithm;
  Problem problem = Problem::OneMax;
  int n = 0;
  int lambda = 1;
  SummaryStats stats;
};

/// Every fitness value 0..n.
std::vector<int> all_targets(int n);

/// Shortest decimal that round-trips; empty for NaN.
std::string format_number(double value);

/// Header run_id,target,evaluations. Targets a run never reached are omitted.
void write_raw_csv(std::ostream& out, std::span<const FixedTargetLog> logs, std::span<const int> targets);

/// Header algorithm,problem,n,lambda,target,count,aht,rsd,q02,q10,q25,q50,q75,q90,q98.
/// Empty cells (count = 0) leave the statistic columns blank.
void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

/// JSON array mirroring the summary CSV; blank cells become null.
void write_summary_json(std::ostream& out, std::span<const SummaryRow> rows);

}  // namespace nsbm

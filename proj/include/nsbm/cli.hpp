#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nsbm/algorithms.hpp"
#include "nsbm/fitness.hpp"

namespace nsbm::cli {

/// Environment variable that overrides the default output directory.
inline constexpr const char* kOutputDirEnv = "NSBM_OUTPUT_DIR";

struct ExperimentSpec {
  std::string algorithm = "rls";
  std::string problem = "onemax";
  int n = 100;
  /// Unset: 1 for rls/oracle-rls, 2 otherwise.
  std::optional<int> lambda;
  double sigma = 2.0;
  double F = 0.98;
  std::optional<double> r_init;
  double meta_r = 1.0;
  double meta_var = 0.0;
  std::optional<std::string> oracle;
  int runs = 100;
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = 1;
  /// Empty means every value in [0, n].
  std::vector<int> targets;
  std::filesystem::path output = ".";
  std::string format = "csv";
  unsigned jobs = 0;

  /// Validates every field and builds the algorithm configuration.
  /// Throws ConfigError naming the offending field.
  AlgorithmConfig to_config() const;
  Problem parsed_problem() const;
  std::vector<int> resolved_targets() const;
};

struct FigureOptions {
  std::vector<int> n_list;  // empty: the figure's desk-scale default
  std::vector<std::string> problems;  // empty: the figure's default
  int runs = 100;
  std::uint64_t seed = 1;
  std::filesystem::path output = ".";
  unsigned jobs = 0;
};

/// Runs a batch and writes <output>/<stem>_raw.csv plus the summary
/// (_summary.csv, and _summary.json for format json). Returns the exit status.
int cmd_run(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);

/// Writes the strength table of `problem` at dimension n as CSV to `path`.
int cmd_oracle(const std::string& problem, int n, const std::filesystem::path& path, std::ostream& out,
               std::ostream& err);

/// Regenerates the data behind figure `id` (1-4) into opts.output.
int cmd_figure(int id, const FigureOptions& opts, std::ostream& out, std::ostream& err);

/// Entry point shared by the executable and the tests; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nsbm::cli

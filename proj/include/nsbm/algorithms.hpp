#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "nsbm/bit_string.hpp"
#include "nsbm/fitness.hpp"
#include "nsbm/fixed_target_log.hpp"
#include "nsbm/random.hpp"

namespace nsbm {

class StrengthTable;

enum class Variant {
  TwoRate,    // (1+lambda) EA_{r/2,2r}
  Half,       // (1+lambda) EA_{r,U(0,sigma r/n)}; EA_half for sigma = 2
  Norm,       // normalized standard bit mutation
  Var,        // normalized, with self-adjusting variance F^c r(1-r/n)
  Meta,       // static normalized strength N_{>0}(meta_r, meta_var)
  PlainEA,    // (1+lambda) EA_{>0}
  RLS,
  OracleRLS,  // (1+1) flipping k(f(x)) bits from an exact strength table
};

enum class OracleKind { Drift, Opt };

std::string_view to_string(Variant variant) noexcept;
/// Accepts the CLI names: two-rate, half, norm, var, meta, ea, rls, oracle-rls.
Variant parse_variant(std::string_view name);
std::string_view to_string(OracleKind kind) noexcept;
OracleKind parse_oracle_kind(std::string_view name);

// Invalid configuration. field() names the offending parameter.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct AlgorithmConfig {
  Variant variant = Variant::RLS;
  int lambda = 1;
  /// Initial strength (TwoRate/Half/Norm/Var) or static rate numerator (PlainEA).
  /// Defaults to 2, or 1 for PlainEA.
  std::optional<double> r_init;
  /// Interval scale of Half.
  double sigma = 2.0;
  /// Variance discount of Var.
  double F = 0.98;
  double meta_r = 1.0;
  double meta_var = 0.0;
  /// Evaluation budget; unset means default_budget(problem, n).
  std::optional<std::uint64_t> budget;
  /// Strength table used by OracleRLS; unset picks the one matching the problem.
  std::optional<OracleKind> oracle_kind;

  double initial_r() const noexcept { return r_init.value_or(variant == Variant::PlainEA ? 1.0 : 2.0); }
  OracleKind oracle_for(Problem problem) const noexcept {
    return oracle_kind.value_or(problem == Problem::OneMax ? OracleKind::Drift : OracleKind::Opt);
  }

  /// Throws ConfigError naming the first invalid field.
  void validate(Problem problem, int n) const;
};

/// 100 n^2 for LeadingOnes, ceil(1000 n ln n) for OneMax; at least 1000.
std::uint64_t default_budget(Problem problem, int n);

/// Short display label, e.g. "(1+50) EA_var" or "RLS".
std::string display_name(const AlgorithmConfig& cfg);

struct SearchState {
  BitString x;
  int fx = 0;
  /// Current strength (Half/Norm/Var) or rate parameter (TwoRate).
  double r = 2.0;
  /// Consecutive iterations whose winning strength equalled the previous r (Var only).
  int c = 0;

  // Offspring buffers, reused across iterations.
  BitString candidate;
  BitString best;
};

/// Evaluates a uniform initial point and fills in x, fx, r, c.
SearchState initial_state(const AlgorithmConfig& cfg, int n, Evaluator& eval, RandomSource& rng);

/// Variance discount F^c applied by step_var at the next iteration.
double variance_multiplier(const SearchState& state, const AlgorithmConfig& cfg);

// One iteration of each variant. Each offspring evaluation goes through
// `eval`; once eval.done() the iteration stops early and selection uses the
// offspring evaluated so far. No-op if eval.done() on entry.
void step_two_rate(SearchState& state, const AlgorithmConfig& cfg, RandomSource& rng, Evaluator& eval);
void step_half(SearchState& state, const AlgorithmConfig& cfg, RandomSource& rng, Evaluator& eval);
void step_norm(SearchState& state, const AlgorithmConfig& cfg, RandomSource& rng, Evaluator& eval);
void step_var(SearchState& state, const AlgorithmConfig& cfg, RandomSource& rng, Evaluator& eval);
void step_meta(SearchState& state, const AlgorithmConfig& cfg, RandomSource& rng, Evaluator& eval);
void step_plain_ea(SearchState& state, const AlgorithmConfig& cfg, RandomSource& rng, Evaluator& eval);
void step_rls(SearchState& state, const AlgorithmConfig& cfg, RandomSource& rng, Evaluator& eval);
void step_oracle_rls(SearchState& state, const AlgorithmConfig& cfg, RandomSource& rng, Evaluator& eval,
                     const StrengthTable& table);

/// Dispatches to the step of cfg.variant. `table` is required for OracleRLS.
void step(SearchState& state, const AlgorithmConfig& cfg, RandomSource& rng, Evaluator& eval,
          const StrengthTable* table = nullptr);

/// One full run: uniform initialization, then steps until the optimum is
/// evaluated or the budget is spent. Builds the strength table itself for
/// OracleRLS unless one is supplied.
FixedTargetLog run(const AlgorithmConfig& cfg, Problem problem, int n, RandomSource& rng,
                   const StrengthTable* table = nullptr);

}  // namespace nsbm

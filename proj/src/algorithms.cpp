#include "nsbm/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "nsbm/oracle.hpp"
#include "nsbm/sampling.hpp"

namespace nsbm {

namespace {

enum class TieRule { LowestIndex, UniformRandom };

struct Generation {
  int evaluated = 0;
  int winner = -1;
  int winner_strength = 0;
  int winner_fitness = 0;
};

// Creates and evaluates offspring i = 0..lambda-1 in order, keeping the best
// one in state.best. Stops early once the evaluator is done.
template <class StrengthFn>
Generation breed(SearchState& s, int lambda, StrengthFn&& strength_of, TieRule rule, RandomSource& rng,
                 Evaluator& eval) {
  Generation g;
  int ties = 0;
  for (int i = 0; i < lambda && !eval.done(); ++i) {
    const int strength = strength_of(i);
    mutate_into(s.x, static_cast<std::size_t>(strength), rng, s.candidate);
    const int f = eval(s.candidate);
    ++g.evaluated;
    bool take = false;
    if (g.winner < 0 || f > g.winner_fitness) {
      take = true;
      ties = 1;
    } else if (f == g.winner_fitness && rule == TieRule::UniformRandom) {
      ++ties;
      take = rng.below(static_cast<std::uint64_t>(ties)) == 0;
    }
    if (take) {
      g.winner = i;
      g.winner_strength = strength;
      g.winner_fitness = f;
      std::swap(s.best, s.candidate);
    }
  }
  return g;
}

void accept(SearchState& s, const Generation& g) {
  if (g.winner_fitness >= s.fx) {
    std::swap(s.x, s.best);
    s.fx = g.winner_fitness;
  }
}

double two_rate_cap(int n) { return std::max(n / 4.0, 2.0); }

bool split_variant(Variant v) { return v == Variant::TwoRate || v == Variant::Half; }

void require_even_lambda(const AlgorithmConfig& cfg) {
  if (cfg.lambda < 2 || cfg.lambda % 2 != 0) {
    throw ConfigError("lambda", fmt::format("lambda must be even for {}", to_string(cfg.variant)));
  }
}

// Strength r of the previous winner, as an integer in [1, n].
int current_strength(const SearchState& s, int n) {
  return std::clamp(static_cast<int>(std::lround(s.r)), 1, n);
}

double binomial_variance(double r, int n) { return std::max(0.0, r * (1.0 - r / n)); }

}  // namespace

std::string_view to_string(Variant variant) noexcept {
  switch (variant) {
    case Variant::TwoRate: return "two-rate";
    case Variant::Half: return "half";
    case Variant::Norm: return "norm";
    case Variant::Var: return "var";
    case Variant::Meta: return "meta";
    case Variant::PlainEA: return "ea";
    case Variant::RLS: return "rls";
    case Variant::OracleRLS: return "oracle-rls";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  for (const auto v : {Variant::TwoRate, Variant::Half, Variant::Norm, Variant::Var, Variant::Meta, Variant::PlainEA,
                       Variant::RLS, Variant::OracleRLS}) {
    if (name == to_string(v)) return v;
  }
  throw ConfigError("algorithm", fmt::format("unknown algorithm '{}'", name));
}

std::string_view to_string(OracleKind kind) noexcept { return kind == OracleKind::Drift ? "drift" : "opt"; }

OracleKind parse_oracle_kind(std::string_view name) {
  if (name == "drift") return OracleKind::Drift;
  if (name == "opt") return OracleKind::Opt;
  throw ConfigError("oracle", fmt::format("unknown oracle kind '{}'", name));
}

void AlgorithmConfig::validate(Problem problem, int n) const {
  if (n < 1) throw ConfigError("n", "n must be at least 1");
  if (lambda < 1) throw ConfigError("lambda", "lambda must be at least 1");
  if (split_variant(variant)) require_even_lambda(*this);
  if ((variant == Variant::RLS || variant == Variant::OracleRLS) && lambda != 1) {
    throw ConfigError("lambda", fmt::format("lambda must be 1 for {}", to_string(variant)));
  }
  if (!(F > 0.0 && F < 1.0)) throw ConfigError("F", "F must lie in (0, 1)");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma", "sigma must be positive");
  if (!std::isfinite(meta_r)) throw ConfigError("meta_r", "meta_r must be finite");
  if (!(meta_var >= 0.0) || !std::isfinite(meta_var)) throw ConfigError("meta_var", "meta_var must be >= 0");
  if (budget && *budget < 1) throw ConfigError("budget", "budget must be at least 1");

  const double r = initial_r();
  if (variant == Variant::TwoRate) {
    if (!(r >= 2.0 && r <= two_rate_cap(n))) {
      throw ConfigError("r_init", fmt::format("r_init must lie in [2, {}] for two-rate", two_rate_cap(n)));
    }
  } else if (variant == Variant::Half || variant == Variant::Norm || variant == Variant::Var ||
             variant == Variant::PlainEA) {
    if (!(r >= 1.0 && r <= n)) throw ConfigError("r_init", "r_init must lie in [1, n]");
    if (variant == Variant::Half && r != std::floor(r)) {
      throw ConfigError("r_init", "r_init must be an integer strength for half");
    }
  }
  if (variant == Variant::OracleRLS) {
    const auto kind = oracle_for(problem);
    if ((kind == OracleKind::Drift) != (problem == Problem::OneMax)) {
      throw ConfigError("oracle", fmt::format("oracle '{}' is not defined for {}", to_string(kind), to_string(problem)));
    }
  }
}

std::uint64_t default_budget(Problem problem, int n) {
  const double nn = n;
  const double b = problem == Problem::OneMax ? std::ceil(1000.0 * nn * std::log(nn)) : 100.0 * nn * nn;
  return std::max<std::uint64_t>(static_cast<std::uint64_t>(b), 1000);
}

std::string display_name(const AlgorithmConfig& cfg) {
  const auto prefix = fmt::format("(1+{}) ", cfg.lambda);
  switch (cfg.variant) {
    case Variant::TwoRate: return prefix + "EA_{r/2,2r}";
    case Variant::Half:
      return cfg.sigma == 2.0 ? prefix + "EA_half" : prefix + fmt::format("EA_{{r,U(0,{}r/n)}}", cfg.sigma);
    case Variant::Norm: return prefix + "EA_norm";
    case Variant::Var: return prefix + "EA_var";
    case Variant::Meta: return prefix + fmt::format("Meta(r={},var={})", cfg.meta_r, cfg.meta_var);
    case Variant::PlainEA: return prefix + "EA_>0";
    case Variant::RLS: return "RLS";
    case Variant::OracleRLS: return cfg.oracle_kind == OracleKind::Opt ? "RLS_opt" : "RLS_drift";
  }
  return "unknown";
}

SearchState initial_state(const AlgorithmConfig& cfg, int n, Evaluator& eval, RandomSource& rng) {
  SearchState s;
  s.x = new_uniform(static_cast<std::size_t>(n), rng);
  s.fx = eval(s.x);
  s.r = cfg.initial_r();
  s.c = 0;
  s.candidate = BitString(static_cast<std::size_t>(n));
  s.best = BitString(static_cast<std::size_t>(n));
  return s;
}

double variance_multiplier(const SearchState& state, const AlgorithmConfig& cfg) {
  return std::pow(cfg.F, state.c);
}

void step_two_rate(SearchState& s, const AlgorithmConfig& cfg, RandomSource& rng, Evaluator& eval) {
  require_even_lambda(cfg);
  if (eval.done()) return;
  const int n = eval.dimension();
  const int half = cfg.lambda / 2;
  const double low_rate = std::min(s.r / (2.0 * n), 1.0);
  const double high_rate = std::min(2.0 * s.r / n, 1.0);
  const auto g = breed(
      s, cfg.lambda, [&](int i) { return sample_cond_binomial(n, i < half ? low_rate : high_rate, rng); },
      TieRule::UniformRandom, rng, eval);
  accept(s, g);
  const double halve_prob = g.winner < half ? 0.75 : 0.25;
  if (rng.uniform01() <= halve_prob) {
    s.r = std::max(s.r / 2.0, 2.0);
  } else {
    s.r = std::min(2.0 * s.r, two_rate_cap(n));
  }
}

void step_half(SearchState& s, const AlgorithmConfig& cfg, RandomSource& rng, Evaluator& eval) {
  require_even_lambda(cfg);
  if (eval.done()) return;
  const int n = eval.dimension();
  const int half = cfg.lambda / 2;
  const int strength = current_strength(s, n);
  const StrengthDistribution stochastic = UniformRate{cfg.sigma, static_cast<double>(strength), n};
  const auto g = breed(
      s, cfg.lambda, [&](int i) { return i < half ? strength : sample_strength(stochastic, rng); },
      TieRule::LowestIndex, rng, eval);
  s.r = g.winner_strength;
  accept(s, g);
}

void step_norm(SearchState& s, const AlgorithmConfig& cfg, RandomSource& rng, Evaluator& eval) {
  if (eval.done()) return;
  const int n = eval.dimension();
  const StrengthDistribution dist = CondNormal{s.r, binomial_variance(s.r, n), n};
  const auto g = breed(s, cfg.lambda, [&](int) { return sample_strength(dist, rng); }, TieRule::LowestIndex, rng, eval);
  s.r = g.winner_strength;
  accept(s, g);
}

void step_var(SearchState& s, const AlgorithmConfig& cfg, RandomSource& rng, Evaluator& eval) {
  if (eval.done()) return;
  const int n = eval.dimension();
  const StrengthDistribution dist = CondNormal{s.r, variance_multiplier(s, cfg) * binomial_variance(s.r, n), n};
  const auto g = breed(s, cfg.lambda, [&](int) { return sample_strength(dist, rng); }, TieRule::LowestIndex, rng, eval);
  s.c = static_cast<double>(g.winner_strength) == s.r ? s.c + 1 : 0;
  s.r = g.winner_strength;
  accept(s, g);
}

void step_meta(SearchState& s, const AlgorithmConfig& cfg, RandomSource& rng, Evaluator& eval) {
  if (eval.done()) return;
  const int n = eval.dimension();
  const StrengthDistribution dist = CondNormal{cfg.meta_r, cfg.meta_var, n};
  const auto g = breed(s, cfg.lambda, [&](int) { return sample_strength(dist, rng); }, TieRule::LowestIndex, rng, eval);
  accept(s, g);
}

void step_plain_ea(SearchState& s, const AlgorithmConfig& cfg, RandomSource& rng, Evaluator& eval) {
  if (eval.done()) return;
  const int n = eval.dimension();
  const StrengthDistribution dist = CondBinomial{n, std::min(cfg.initial_r() / n, 1.0)};
  const auto g = breed(s, cfg.lambda, [&](int) { return sample_strength(dist, rng); }, TieRule::LowestIndex, rng, eval);
  accept(s, g);
}

void step_rls(SearchState& s, const AlgorithmConfig&, RandomSource& rng, Evaluator& eval) {
  if (eval.done()) return;
  const auto g = breed(s, 1, [](int) { return 1; }, TieRule::LowestIndex, rng, eval);
  accept(s, g);
}

void step_oracle_rls(SearchState& s, const AlgorithmConfig&, RandomSource& rng, Evaluator& eval,
                     const StrengthTable& table) {
  if (eval.done()) return;
  const int n = eval.dimension();
  if (table.dimension() != n) throw ConfigError("oracle", "strength table dimension does not match n");
  const int strength = table(std::min(s.fx, n - 1));
  const auto g = breed(s, 1, [strength](int) { return strength; }, TieRule::LowestIndex, rng, eval);
  accept(s, g);
}

void step(SearchState& s, const AlgorithmConfig& cfg, RandomSource& rng, Evaluator& eval, const StrengthTable* table) {
  switch (cfg.variant) {
    case Variant::TwoRate: return step_two_rate(s, cfg, rng, eval);
    case Variant::Half: return step_half(s, cfg, rng, eval);
    case Variant::Norm: return step_norm(s, cfg, rng, eval);
    case Variant::Var: return step_var(s, cfg, rng, eval);
    case Variant::Meta: return step_meta(s, cfg, rng, eval);
    case Variant::PlainEA: return step_plain_ea(s, cfg, rng, eval);
    case Variant::RLS: return step_rls(s, cfg, rng, eval);
    case Variant::OracleRLS:
      if (table == nullptr) throw ConfigError("oracle", "oracle-rls needs a strength table");
      return step_oracle_rls(s, cfg, rng, eval, *table);
  }
}

FixedTargetLog run(const AlgorithmConfig& cfg, Problem problem, int n, RandomSource& rng, const StrengthTable* table) {
  cfg.validate(problem, n);
  std::optional<StrengthTable> owned;
  if (cfg.variant == Variant::OracleRLS && table == nullptr) {
    owned.emplace(problem == Problem::OneMax ? onemax_drift_table(n) : lo_opt_table(n));
    table = &*owned;
  }
  Evaluator eval(problem, n, cfg.budget.value_or(default_budget(problem, n)));
  auto state = initial_state(cfg, n, eval, rng);
  while (!eval.done()) step(state, cfg, rng, eval, table);
  return std::move(eval).take_log();
}

}  // namespace nsbm

// Acceptance suite. Prints one PASS/FAIL line per criterion (with the measured
// quantities underneath) and exits nonzero if any criterion fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "nsbm/algorithms.hpp"
#include "nsbm/cli.hpp"
#include "nsbm/harness.hpp"
#include "nsbm/oracle.hpp"
#include "nsbm/sampling.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using nsbm::AlgorithmConfig;
using nsbm::Problem;
using nsbm::RandomSource;
using nsbm::StrengthTable;
using nsbm::Variant;

namespace {

// Pinned tolerances.
constexpr double kRlsLeadingOnesTol = 0.05;
constexpr double kRlsOneMaxTol = 0.05;
constexpr double kRankAlpha = 0.01;
constexpr double kVarVsRlsTol = 0.25;
constexpr double kMonteCarloTol = 0.01;
constexpr double kOneMaxRegime = 0.94;
constexpr double kOneMaxRegimeTol = 0.03;
constexpr double kLeadingOnesRegime = 0.50;
constexpr double kLeadingOnesRegimeTol = 0.05;
constexpr double kChiSquareAlpha = 1e-3;
constexpr double kTotalVariationMax = 0.05;
constexpr double kMetaRankAlpha = 0.01;
constexpr double kMultiplier100 = 0.1326;
constexpr double kMultiplierTol = 5e-5;

constexpr std::uint64_t kSeed = 20240601;

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    std::printf("    %s %s\n", ok ? "ok  " : "FAIL", what.c_str());
    ok_ = ok_ && ok;
  }
  bool ok() const { return ok_; }

 private:
  bool ok_ = true;
};

std::string fmt_double(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

AlgorithmConfig config(Variant v, int lambda) {
  AlgorithmConfig cfg;
  cfg.variant = v;
  cfg.lambda = lambda;
  return cfg;
}

std::vector<double> times(const AlgorithmConfig& cfg, Problem problem, int n, int runs, std::uint64_t seed) {
  const auto logs = nsbm::execute_batch(cfg, problem, n, runs, seed);
  auto t = nsbm::optimization_times(logs);
  if (static_cast<int>(t.size()) != runs) {
    std::printf("    note: %d of %d runs of %s missed the optimum\n", runs - static_cast<int>(t.size()), runs,
                nsbm::display_name(cfg).c_str());
  }
  return t;
}

double mean(const std::vector<double>& v) {
  return v.empty() ? NAN : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

void expect_close(Check& c, const std::string& label, double measured, double reference, double rel_tol) {
  const double rel = std::abs(measured - reference) / reference;
  c.expect(rel <= rel_tol, label + ": measured " + fmt_double(measured) + ", reference " + fmt_double(reference) +
                               ", relative error " + fmt_double(rel, 3) + " (limit " + fmt_double(rel_tol, 3) + ")");
}

void expect_beats(Check& c, const AlgorithmConfig& better, const AlgorithmConfig& worse, Problem problem, int n,
                  int runs, std::uint64_t seed) {
  const auto a = times(better, problem, n, runs, seed);
  const auto b = times(worse, problem, n, runs, seed + 1);
  const auto r = nsbm::rank_sum_test(a, b);
  c.expect(r.p_less < kRankAlpha && a.size() == static_cast<std::size_t>(runs),
           nsbm::display_name(better) + " (mean " + fmt_double(mean(a)) + ") beats " + nsbm::display_name(worse) +
               " (mean " + fmt_double(mean(b)) + "): one-sided p = " + fmt_double(r.p_less, 3));
}

// ---------------------------------------------------------------------------

bool criterion1() {
  Check c;
  const auto rls = config(Variant::RLS, 1);
  expect_close(c, "RLS LeadingOnes n=2000, 100 runs, mean vs 2.0e6", mean(times(rls, Problem::LeadingOnes, 2000, 100, kSeed)),
               2.0e6, kRlsLeadingOnesTol);
  const double exact = nsbm::lo_expected_time(500, StrengthTable::constant(500, 1)) + 1.0;
  expect_close(c, "RLS LeadingOnes n=500, 100 runs, mean vs exact", mean(times(rls, Problem::LeadingOnes, 500, 100, kSeed + 1)),
               exact, kRlsLeadingOnesTol);
  return c.ok();
}

bool criterion2() {
  Check c;
  const int n = 1000;
  double harmonic = 0.0;
  for (int i = 1; i <= n / 2; ++i) harmonic += 1.0 / i;
  expect_close(c, "RLS OneMax n=1000, 100 runs, mean vs n H(n/2)",
               mean(times(config(Variant::RLS, 1), Problem::OneMax, n, 100, kSeed + 2)), n * harmonic, kRlsOneMaxTol);
  return c.ok();
}

bool criterion3() {
  Check c;
  expect_beats(c, config(Variant::Half, 50), config(Variant::TwoRate, 50), Problem::OneMax, 2000, 100, kSeed + 3);
  expect_beats(c, config(Variant::TwoRate, 2), config(Variant::TwoRate, 50), Problem::OneMax, 2000, 100, kSeed + 5);
  return c.ok();
}

bool criterion4() {
  Check c;
  expect_beats(c, config(Variant::TwoRate, 50), config(Variant::TwoRate, 2), Problem::LeadingOnes, 1000, 100, kSeed + 7);
  expect_beats(c, config(Variant::Half, 50), config(Variant::RLS, 1), Problem::LeadingOnes, 1000, 100, kSeed + 9);
  return c.ok();
}

bool criterion5() {
  Check c;
  const double var = mean(times(config(Variant::Var, 2), Problem::OneMax, 2000, 100, kSeed + 11));
  const double rls = mean(times(config(Variant::RLS, 1), Problem::OneMax, 2000, 100, kSeed + 12));
  expect_close(c, "(1+2) EA_var vs RLS, OneMax n=2000, mean ratio", var, rls, kVarVsRlsTol);
  return c.ok();
}

bool criterion6() {
  Check c;
  const int n = 1000;
  int first_bad = -1;
  for (int v = 667; v < n; ++v) {
    if (nsbm::onemax_k_drift(n, v) != 1 && first_bad < 0) first_bad = v;
  }
  c.expect(first_bad < 0, "onemax_k_drift(1000, v) = 1 for all v >= 667");
  first_bad = -1;
  for (int i = 500; i < n; ++i) {
    if (nsbm::lo_k_opt(n, i) != 1 && first_bad < 0) first_bad = i;
  }
  c.expect(first_bad < 0, "lo_k_opt(1000, i) = 1 for all i >= 500");

  const int m = 50, runs = 100000;
  const auto rls_table = StrengthTable::constant(m, 1);
  const auto opt_table = nsbm::lo_opt_table(m);
  auto oracle = config(Variant::OracleRLS, 1);
  oracle.oracle_kind = nsbm::OracleKind::Opt;
  for (const auto& [cfg, table, label] :
       {std::tuple{config(Variant::RLS, 1), &rls_table, "RLS"}, std::tuple{oracle, &opt_table, "RLS_opt"}}) {
    // Iterations exclude the initial evaluation.
    const double simulated = mean(times(cfg, Problem::LeadingOnes, m, runs, kSeed + 13)) - 1.0;
    expect_close(c, std::string(label) + " LeadingOnes n=50, 1e5 runs vs lo_expected_time", simulated,
                 nsbm::lo_expected_time(m, *table), kMonteCarloTol);
  }
  return c.ok();
}

bool criterion7() {
  Check c;
  const int n = 1000;
  RandomSource rng(kSeed + 14);
  const double om = nsbm::regime_fraction(Problem::OneMax, n, nsbm::onemax_drift_table(n), nullptr, 100, rng);
  c.expect(std::abs(om - kOneMaxRegime) <= kOneMaxRegimeTol,
           "RLS OneMax n=1000, share of evaluations where k_drift = 1: " + fmt_double(om, 4) + " (target 0.94 +- 0.03)");
  const double lo = nsbm::regime_fraction(Problem::LeadingOnes, n, nsbm::lo_opt_table(n), nullptr, 50, rng);
  c.expect(std::abs(lo - kLeadingOnesRegime) <= kLeadingOnesRegimeTol,
           "RLS LeadingOnes n=1000, share of evaluations where k_opt = 1: " + fmt_double(lo, 4) +
               " (target 0.50 +- 0.05; exact " +
               fmt_double(nsbm::lo_regime_fraction_exact(n, nsbm::lo_opt_table(n), StrengthTable::constant(n, 1)), 4) +
               ")");
  return c.ok();
}

bool criterion8() {
  Check c;
  RandomSource rng(kSeed + 15);
  const int samples = 1000000;
  for (const auto& [n, p] : std::vector<std::pair<int, double>>{{2, 0.5}, {5, 0.2}, {8, 0.25}, {12, 1.0 / 12}, {12, 0.5}}) {
    const auto expected = nsbm::testing::enumerate_cond_binomial(n, p);
    std::vector<double> observed(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i < samples; ++i) observed[static_cast<std::size_t>(nsbm::sample_cond_binomial(n, p, rng))] += 1;
    double chi2 = 0.0, pool_o = 0.0, pool_e = 0.0;
    int cells = 0;
    for (int k = 1; k <= n; ++k) {
      const double e = expected[static_cast<std::size_t>(k)] * samples;
      if (e < 5.0) {
        pool_o += observed[static_cast<std::size_t>(k)];
        pool_e += e;
      } else {
        chi2 += std::pow(observed[static_cast<std::size_t>(k)] - e, 2) / e;
        ++cells;
      }
    }
    if (pool_e > 0.0) {
      chi2 += std::pow(pool_o - pool_e, 2) / pool_e;
      ++cells;
    }
    const double pval = nsbm::testing::chi_square_upper_tail(chi2, cells - 1);
    c.expect(pval > kChiSquareAlpha, "conditional binomial chi-square n=" + std::to_string(n) + " p=" + fmt_double(p, 4) +
                                         ", 1e6 samples: p-value " + fmt_double(pval, 3) + " (alpha 1e-3)");
  }

  const int n = 1000;
  const double p = 2.0 / n;
  std::vector<double> hb(n + 1, 0.0), hn(n + 1, 0.0);
  for (int i = 0; i < samples; ++i) {
    hb[static_cast<std::size_t>(nsbm::sample_cond_binomial(n, p, rng))] += 1.0 / samples;
    hn[static_cast<std::size_t>(nsbm::sample_cond_normal(n * p, n * p * (1 - p), n, rng))] += 1.0 / samples;
  }
  double tv = 0.0;
  for (int k = 0; k <= n; ++k) tv += 0.5 * std::abs(hb[static_cast<std::size_t>(k)] - hn[static_cast<std::size_t>(k)]);
  c.expect(tv < kTotalVariationMax, "conditional normal vs conditional binomial, n=1000, p=2/n: total variation " +
                                        fmt_double(tv, 4) + " (limit 0.05; exact distance between the two laws 0.0746)");
  return c.ok();
}

bool criterion9() {
  Check c;
  // Elitism, evaluation accounting and strength range, stepping every variant by hand.
  bool elitist = true, accounted = true, in_range = true;
  for (const auto v : {Variant::TwoRate, Variant::Half, Variant::Norm, Variant::Var, Variant::Meta, Variant::PlainEA,
                       Variant::RLS}) {
    auto cfg = config(v, v == Variant::RLS ? 1 : 10);
    cfg.meta_r = 3.0;
    cfg.meta_var = 2.0;
    for (const auto problem : {Problem::OneMax, Problem::LeadingOnes}) {
      for (std::uint64_t run = 0; run < 10; ++run) {
        auto rng = RandomSource::child(kSeed + 16, run);
        const int n = 100;
        nsbm::Evaluator eval(problem, n, nsbm::default_budget(problem, n));
        auto s = nsbm::initial_state(cfg, n, eval, rng);
        std::uint64_t t = 0;
        while (!eval.done()) {
          const int before = s.fx;
          const auto x = s.x;
          nsbm::step(s, cfg, rng, eval);
          ++t;
          elitist = elitist && s.fx >= before && s.fx == nsbm::fitness(problem, s.x);
          if (!eval.done()) accounted = accounted && eval.evaluations() == 1 + t * static_cast<std::uint64_t>(cfg.lambda);
          if (s.x != x) {
            const auto d = nsbm::hamming(x, s.x);
            in_range = in_range && d >= 1 && d <= static_cast<std::size_t>(n);
          }
          if (v == Variant::Half || v == Variant::Norm || v == Variant::Var) {
            in_range = in_range && s.r >= 1.0 && s.r <= n;
          }
        }
      }
    }
  }
  RandomSource rng(kSeed + 17);
  for (int trial = 0; trial < 200000; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(500));
    const double r = 1.0 + static_cast<double>(rng.below(static_cast<std::uint64_t>(n)));
    int k = 0;
    switch (rng.below(3)) {
      case 0: k = nsbm::sample_cond_binomial(n, std::min(1.0, 4.0 * r * rng.uniform_open() / n), rng); break;
      case 1: k = nsbm::sample_cond_normal(r + 20.0 * (rng.uniform01() - 0.5), 3.0 * r * rng.uniform01(), n, rng); break;
      default: k = nsbm::sample_strength(nsbm::UniformRate{2.0, r, n}, rng); break;
    }
    in_range = in_range && k >= 1 && k <= n;
  }
  c.expect(elitist, "elitism: fitness never decreases (7 variants x 2 problems x 10 runs, n=100)");
  c.expect(accounted, "evaluation accounting: 1 + t lambda after t iterations");
  c.expect(in_range, "mutation strengths lie in [1, n] (runs plus 2e5 direct draws)");

  auto meta = config(Variant::Meta, 1);
  for (const auto problem : {Problem::OneMax, Problem::LeadingOnes}) {
    const int n = problem == Problem::OneMax ? 500 : 200;
    const auto a = times(meta, problem, n, 100, kSeed + 18);
    const auto b = times(config(Variant::RLS, 1), problem, n, 100, kSeed + 19);
    const double p = nsbm::rank_sum_test(a, b).p_two_sided;
    c.expect(p > kMetaRankAlpha, std::string("Meta(var=0, r=1) vs RLS on ") + std::string(nsbm::to_string(problem)) +
                                     " n=" + std::to_string(n) + ": two-sided rank-sum p = " + fmt_double(p, 3) +
                                     " (no difference at alpha 0.01)");
  }

  const auto base = fs::temp_directory_path() / ("nsbm_acceptance_" + std::to_string(::getpid()));
  bool identical = true;
  for (const auto& algorithm : {"two-rate", "half", "var", "oracle-rls"}) {
    std::string contents[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto dir = base / std::to_string(rep);
      std::ostringstream out, err;
      const int status = nsbm::cli::run_cli({"run", "--algorithm", algorithm, "--problem", "leadingones", "--n", "60",
                                             "--runs", "8", "--seed", "5", "--format", "json", "--output", dir.string()},
                                            out, err);
      identical = identical && status == 0;
      for (const auto& entry : fs::directory_iterator(dir)) {
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream s;
        s << entry.path().filename().string() << '\n' << in.rdbuf();
        contents[rep] += s.str();
      }
      fs::remove_all(dir);
    }
    identical = identical && !contents[0].empty() && contents[0] == contents[1];
  }
  fs::remove_all(base);
  c.expect(identical, "byte-identical output files on rerun with a fixed seed (4 algorithms)");
  return c.ok();
}

bool criterion10() {
  Check c;
  const int n = 500;
  auto cfg = config(Variant::Var, 2);
  RandomSource rng(kSeed + 20);
  nsbm::Evaluator eval(Problem::OneMax, n, 1ULL << 40);
  auto s = nsbm::initial_state(cfg, n, eval, rng);
  s.r = n;  // zero variance, so every winner repeats the strength
  for (int t = 0; t < 100; ++t) {
    const double before = s.r;
    nsbm::step_var(s, cfg, rng, eval);
    if (s.r != before) break;
  }
  const double m = nsbm::variance_multiplier(s, cfg);
  c.expect(s.c == 100 && std::abs(m - kMultiplier100) <= kMultiplierTol,
           "after 100 repeats c = " + std::to_string(s.c) + ", variance multiplier " + fmt_double(m, 6) +
               " (0.98^100 = " + fmt_double(std::pow(0.98, 100), 6) + ")");
  return c.ok();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<bool()> body;
  };
  const std::vector<Criterion> criteria = {
      {1, "RLS on LeadingOnes matches n^2/2 and the exact expected time", criterion1},
      {2, "RLS on OneMax matches the coupon-collector value", criterion2},
      {3, "OneMax rankings at n=2000", criterion3},
      {4, "LeadingOnes rankings at n=1000", criterion4},
      {5, "(1+2) EA_var within 25% of RLS on OneMax", criterion5},
      {6, "oracle strengths and exact LeadingOnes times", criterion6},
      {7, "regime fractions at n=1000", criterion7},
      {8, "distributional checks of the strength samplers", criterion8},
      {9, "property suite", criterion9},
      {10, "EA_var variance multiplier after 100 repeats", criterion10},
  };
  int failed = 0;
  for (const auto& crit : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::printf("criterion %d: %s\n", crit.id, crit.title);
    std::fflush(stdout);
    const bool ok = crit.body();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d (%.1fs)\n\n", ok ? "PASS" : "FAIL", crit.id, secs);
    std::fflush(stdout);
    failed += ok ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

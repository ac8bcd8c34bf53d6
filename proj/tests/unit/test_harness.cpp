#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "nsbm/harness.hpp"
#include "nsbm/report.hpp"

using nsbm::FixedTargetLog;
using nsbm::Problem;

namespace {

// A log of dimension n whose run reached fitness `reached` at evaluation `at`.
FixedTargetLog hit_log(int n, int reached, std::uint64_t at) {
  FixedTargetLog log(n);
  log.record(1, 0);
  if (at > 1) log.record(at, reached);
  return log;
}

}  // namespace

TEST_CASE("type-7 quantiles") {
  std::vector<double> x(100);
  for (int i = 0; i < 100; ++i) x[i] = i + 1;
  // For 1..100 the interpolated quantile at probability p is 1 + 99p.
  for (const double p : nsbm::kQuantileProbes) CHECK(nsbm::quantile(x, p) == doctest::Approx(1 + 99 * p));
  CHECK(nsbm::quantile(x, 0.5) == 50.5);
  const std::vector<double> one = {7.0};
  CHECK(nsbm::quantile(one, 0.9) == 7.0);
  CHECK(nsbm::quantile(x, 0.0) == 1.0);
  CHECK(nsbm::quantile(x, 1.0) == 100.0);
  CHECK_THROWS_AS(nsbm::quantile(std::vector<double>{}, 0.5), std::invalid_argument);
}

TEST_CASE("summaries") {
  SUBCASE("constant sample") {
    const std::vector<FixedTargetLog> logs(10, hit_log(5, 5, 42));
    const auto s = nsbm::summarize(logs, 5);
    CHECK(s.count == 10);
    CHECK(s.aht == 42.0);
    CHECK(s.rsd == 0.0);
    CHECK_FALSE(s.censored());
  }
  SUBCASE("hits 1..100") {
    std::vector<FixedTargetLog> logs;
    for (int i = 2; i <= 101; ++i) logs.push_back(hit_log(5, 5, static_cast<std::uint64_t>(i)));
    const auto s = nsbm::summarize(logs, 5);
    CHECK(s.aht == doctest::Approx(51.5));
    CHECK(s.quantiles[3] == doctest::Approx(51.5));
    // Sample sd of 100 consecutive integers is sqrt(100*101/12).
    CHECK(s.rsd == doctest::Approx(std::sqrt(100.0 * 101.0 / 12.0) / 51.5));

    auto shuffled = logs;
    std::reverse(shuffled.begin(), shuffled.end());
    std::rotate(shuffled.begin(), shuffled.begin() + 37, shuffled.end());
    const auto t = nsbm::summarize(shuffled, 5);
    CHECK(t.aht == s.aht);
    CHECK(t.rsd == s.rsd);
    CHECK(t.quantiles == s.quantiles);
  }
  SUBCASE("censored and empty cells") {
    std::vector<FixedTargetLog> logs = {hit_log(5, 5, 10), hit_log(5, 3, 20), hit_log(5, 5, 30)};
    const auto s = nsbm::summarize(logs, 5);
    CHECK(s.runs == 3);
    CHECK(s.count == 2);
    CHECK(s.censored());
    CHECK(s.aht == 20.0);
    const auto at3 = nsbm::summarize(logs, 3);
    CHECK(at3.count == 3);
    CHECK(at3.aht == 20.0);

    const std::vector<FixedTargetLog> none = {hit_log(5, 2, 10)};
    const auto e = nsbm::summarize(none, 4);
    CHECK(e.empty());
    CHECK(std::isnan(e.aht));
    CHECK(std::isnan(e.quantiles[0]));
  }
}

TEST_CASE("normalized times") {
  CHECK(nsbm::normalize_time(1990912, Problem::LeadingOnes, 2000) == doctest::Approx(0.4977).epsilon(1e-4));
  CHECK(nsbm::normalize_time(90276, Problem::OneMax, 10000) == doctest::Approx(0.980).epsilon(1e-3));
}

TEST_CASE("fixed-target curves") {
  nsbm::AlgorithmConfig cfg;
  const auto logs = nsbm::execute_batch(cfg, Problem::OneMax, 60, 20, 5, 1);
  const auto targets = nsbm::all_targets(60);
  const auto curve = nsbm::fixed_target_curve(logs, targets);
  REQUIRE(curve.size() == 61);
  CHECK(curve[0].aht == 1.0);
  for (std::size_t t = 1; t < curve.size(); ++t) {
    CHECK(curve[t].count == 20);
    CHECK(curve[t].aht >= curve[t - 1].aht);
  }
  CHECK(nsbm::optimization_times(logs).size() == 20);
}

TEST_CASE("batches are reproducible and independent of the worker count") {
  nsbm::AlgorithmConfig cfg;
  cfg.variant = nsbm::Variant::Var;
  cfg.lambda = 4;
  const auto one = nsbm::execute_batch(cfg, Problem::LeadingOnes, 40, 12, 99, 1);
  const auto many = nsbm::execute_batch(cfg, Problem::LeadingOnes, 40, 12, 99, 4);
  CHECK(one == many);
  for (int i = 0; i < 12; ++i) {
    auto rng = nsbm::RandomSource::child(99, static_cast<std::uint64_t>(i));
    CHECK(one[i] == nsbm::run(cfg, Problem::LeadingOnes, 40, rng));
  }
  const auto other = nsbm::execute_batch(cfg, Problem::LeadingOnes, 40, 12, 100, 1);
  CHECK(one != other);

  cfg.variant = nsbm::Variant::TwoRate;
  cfg.lambda = 3;  // odd split: every run fails the same way
  CHECK_THROWS_AS(nsbm::execute_batch(cfg, Problem::OneMax, 40, 4, 1, 2), nsbm::ConfigError);
}

TEST_CASE("rank-sum test matches the asymptotic Mann-Whitney reference") {
  struct Case {
    std::vector<double> a, b;
    double u, p_less, p_two;
  };
  // Reference values from scipy.stats.mannwhitneyu(method="asymptotic", use_continuity=True).
  const std::vector<Case> cases = {
      {{1, 2, 3}, {4, 5, 6}, 0.0, 0.04042779918502612, 0.08085559837005224},
      {{1, 2, 2, 5, 7}, {2, 3, 3, 8, 9, 9}, 7.0, 0.08251226710762893, 0.16502453421525787},
      {{3, 1, 4, 1, 5, 9, 2, 6}, {5, 3, 5, 8, 9, 7, 9, 3, 2, 3}, 27.0, 0.13086818821209234, 0.2617363764241847},
  };
  for (const auto& c : cases) {
    const auto r = nsbm::rank_sum_test(c.a, c.b);
    CHECK(r.u == c.u);
    CHECK(r.p_less == doctest::Approx(c.p_less).epsilon(1e-9));
    CHECK(r.p_two_sided == doctest::Approx(c.p_two).epsilon(1e-9));
  }
  std::vector<double> small(50), large(50);
  for (int i = 0; i < 50; ++i) {
    small[i] = i;
    large[i] = i + 40;
  }
  CHECK(nsbm::rank_sum_test(small, large).p_less < 1e-6);
  CHECK(nsbm::rank_sum_test(large, small).p_less > 0.99);
  const std::vector<double> same = {3, 3, 3};
  CHECK(nsbm::rank_sum_test(same, same).p_two_sided == 1.0);
  CHECK_THROWS_AS(nsbm::rank_sum_test(same, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("csv and json writers") {
  const std::vector<FixedTargetLog> logs = {hit_log(2, 2, 3), hit_log(2, 1, 4)};
  const std::vector<int> targets = {0, 1, 2};
  std::ostringstream raw;
  nsbm::write_raw_csv(raw, logs, targets);
  CHECK(raw.str() == "run_id,target,evaluations\n0,0,1\n0,1,3\n0,2,3\n1,0,1\n1,1,4\n");

  const std::vector<nsbm::SummaryRow> rows = {{"RLS", Problem::OneMax, 2, 1, nsbm::summarize(logs, 1)},
                                              {"RLS", Problem::OneMax, 2, 1, nsbm::summarize(logs, 2)}};
  std::ostringstream csv;
  nsbm::write_summary_csv(csv, rows);
  CHECK(csv.str() ==
        "algorithm,problem,n,lambda,target,count,aht,rsd,q02,q10,q25,q50,q75,q90,q98\n"
        "RLS,onemax,2,1,1,2,3.5,0.20203050891044216,3.02,3.1,3.25,3.5,3.75,3.9,3.98\n"
        "RLS,onemax,2,1,2,1,3,0,3,3,3,3,3,3,3\n");

  std::ostringstream json;
  const std::vector<FixedTargetLog> unreached = {hit_log(2, 1, 4)};
  const std::vector<nsbm::SummaryRow> blank = {{"RLS", Problem::LeadingOnes, 2, 1, nsbm::summarize(unreached, 2)}};
  nsbm::write_summary_json(json, blank);
  const auto text = json.str();
  CHECK(text.find("\"algorithm\": \"RLS\"") < text.find("\"problem\": \"leadingones\""));
  CHECK(text.find("\"aht\": null") != std::string::npos);
  CHECK(text.find("\"count\": 0") != std::string::npos);

  CHECK(nsbm::format_number(0.1) == "0.1");
  CHECK(nsbm::format_number(1e21) == "1e+21");
  CHECK(nsbm::format_number(std::nan("")).empty());
}

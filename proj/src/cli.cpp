#include "nsbm/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "nsbm/harness.hpp"
#include "nsbm/oracle.hpp"
#include "nsbm/report.hpp"

namespace nsbm::cli {

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Writes every file to a temporary sibling first and renames them only once
// all of them were written, so a failure leaves no partial output behind.
class FileBatch {
 public:
  void add(fs::path path, std::function<void(std::ostream&)> writer) {
    entries_.push_back({std::move(path), std::move(writer)});
  }

  void commit() {
    std::vector<fs::path> temps;
    try {
      for (const auto& e : entries_) {
        auto tmp = e.path;
        tmp += ".tmp";
        temps.push_back(tmp);
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        e.writer(out);
        out.flush();
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
      }
    } catch (...) {
      std::error_code ec;
      for (const auto& t : temps) fs::remove(t, ec);
      throw;
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) fs::rename(temps[i], entries_[i].path);
  }

 private:
  struct Entry {
    fs::path path;
    std::function<void(std::ostream&)> writer;
  };
  std::vector<Entry> entries_;
};

fs::path default_output_dir() {
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return ".";
}

std::string csv_quoted(std::string_view s) { return fmt::format("\"{}\"", s); }

AlgorithmConfig make_config(Variant variant, int lambda) {
  AlgorithmConfig cfg;
  cfg.variant = variant;
  cfg.lambda = lambda;
  return cfg;
}

// The eleven configurations of the normalized-AHT sweeps.
std::vector<AlgorithmConfig> sweep_roster() {
  std::vector<AlgorithmConfig> roster;
  for (const int lambda : {50, 2}) {
    for (const auto v : {Variant::TwoRate, Variant::Half, Variant::Norm, Variant::Var, Variant::PlainEA}) {
      roster.push_back(make_config(v, lambda));
    }
  }
  roster.push_back(make_config(Variant::RLS, 1));
  return roster;
}

std::vector<AlgorithmConfig> fixed_target_roster() {
  std::vector<AlgorithmConfig> roster;
  for (const auto v : {Variant::TwoRate, Variant::PlainEA, Variant::Half, Variant::Norm, Variant::Var}) {
    roster.push_back(make_config(v, 50));
  }
  roster.push_back(make_config(Variant::RLS, 1));
  return roster;
}

std::vector<Problem> resolve_problems(const std::vector<std::string>& names) {
  if (names.empty()) return {Problem::OneMax, Problem::LeadingOnes};
  std::vector<Problem> out;
  for (const auto& name : names) out.push_back(parse_problem(name));
  return out;
}

std::string config_error_message(const ConfigError& e) { return fmt::format("error: {} (field: {})", e.what(), e.field()); }

int figure_fixed_target(const FigureOptions& opts, std::ostream& out) {
  const auto n_list = opts.n_list.empty() ? std::vector<int>{1000} : opts.n_list;
  std::ostringstream csv;
  csv << "algorithm,label,lambda,problem,n,target,count,aht\n";
  std::uint64_t index = 0;
  for (const auto problem : resolve_problems(opts.problems)) {
    for (const int n : n_list) {
      for (const auto& cfg : fixed_target_roster()) {
        const auto logs = execute_batch(cfg, problem, n, opts.runs, derive_seed(opts.seed, index++), opts.jobs);
        const auto targets = all_targets(n);
        for (const auto& p : fixed_target_curve(logs, targets)) {
          csv << fmt::format("{},{},{},{},{},{},{},{}\n", to_string(cfg.variant), csv_quoted(display_name(cfg)), cfg.lambda,
                             to_string(problem), n, p.target, p.count, format_number(p.aht));
        }
        out << fmt::format("figure 1: {} {} n={} aht at optimum {}\n", display_name(cfg), to_string(problem), n,
                           format_number(fixed_target_curve(logs, std::vector<int>{n}).front().aht));
      }
    }
  }
  FileBatch files;
  const auto text = csv.str();
  files.add(opts.output / "figure1.csv", [&](std::ostream& o) { o << text; });
  files.commit();
  return kExitOk;
}

int figure_oracle(const FigureOptions& opts, std::ostream& out) {
  const auto n_list = opts.n_list.empty() ? std::vector<int>{1000} : opts.n_list;
  FileBatch files;
  std::vector<std::string> texts;
  std::ostringstream regimes;
  regimes << "problem,n,algorithm,method,fraction\n";
  RandomSource rng(opts.seed);
  auto emit = [&](Problem problem, int n, std::string_view algorithm, std::string_view method, double fraction) {
    regimes << fmt::format("{},{},{},{},{}\n", to_string(problem), n, algorithm, method, fraction);
    out << fmt::format("figure 2: {} n={} {} ({}) spends {:.4f} of its time where the oracle strength is 1\n",
                       to_string(problem), n, algorithm, method, fraction);
  };
  for (const auto problem : resolve_problems(opts.problems)) {
    for (const int n : n_list) {
      const auto table = problem == Problem::OneMax ? onemax_drift_table(n) : lo_opt_table(n);
      std::ostringstream csv;
      write_strength_table_csv(csv, problem, table);
      texts.push_back(csv.str());
      files.add(opts.output / fmt::format("figure2_{}_n{}.csv", to_string(problem), n),
                [&texts, i = texts.size() - 1](std::ostream& o) { o << texts[i]; });

      const auto oracle_name = problem == Problem::OneMax ? "RLS_drift" : "RLS_opt";
      emit(problem, n, "RLS", "empirical", regime_fraction(problem, n, table, nullptr, opts.runs, rng));
      emit(problem, n, oracle_name, "empirical", regime_fraction(problem, n, table, &table, opts.runs, rng));
      if (problem == Problem::LeadingOnes) {
        const auto ones = StrengthTable::constant(n, 1);
        emit(problem, n, "RLS", "exact", lo_regime_fraction_exact(n, table, ones));
        emit(problem, n, oracle_name, "exact", lo_regime_fraction_exact(n, table, table));
      }
    }
  }
  const auto regime_text = regimes.str();
  files.add(opts.output / "figure2_regimes.csv", [&](std::ostream& o) { o << regime_text; });
  files.commit();
  return kExitOk;
}

int figure_sweep(int id, Problem problem, const FigureOptions& opts, std::ostream& out) {
  const auto n_list = opts.n_list.empty()
                          ? (problem == Problem::OneMax ? std::vector<int>{500, 1000, 2000} : std::vector<int>{500, 1000})
                          : opts.n_list;
  std::ostringstream csv;
  csv << "algorithm,label,lambda,problem,n,runs,count,aht,normalized_aht\n";
  std::uint64_t index = 0;
  for (const int n : n_list) {
    for (const auto& cfg : sweep_roster()) {
      const auto logs = execute_batch(cfg, problem, n, opts.runs, derive_seed(opts.seed, index++), opts.jobs);
      const auto s = summarize(logs, n);
      const double normalized = s.empty() ? s.aht : normalize_time(s.aht, problem, n);
      csv << fmt::format("{},{},{},{},{},{},{},{},{}\n", to_string(cfg.variant), csv_quoted(display_name(cfg)), cfg.lambda,
                         to_string(problem), n, s.runs, s.count, format_number(s.aht), format_number(normalized));
      out << fmt::format("figure {}: {} n={} normalized aht {}\n", id, display_name(cfg), n, format_number(normalized));
    }
  }
  FileBatch files;
  const auto text = csv.str();
  files.add(opts.output / fmt::format("figure{}.csv", id), [&](std::ostream& o) { o << text; });
  files.commit();
  return kExitOk;
}

// Reads key=value lines ('#' comments) into "--key value" arguments.
std::vector<std::string> spec_file_args(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("spec", "cannot read spec file " + path.string());
  std::vector<std::string> args;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw ConfigError("spec", "spec file line without '=': " + line);
    args.push_back("--" + trim(line.substr(0, eq)));
    args.push_back(trim(line.substr(eq + 1)));
  }
  return args;
}

}  // namespace

Problem ExperimentSpec::parsed_problem() const {
  try {
    return parse_problem(problem);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("problem", e.what());
  }
}

AlgorithmConfig ExperimentSpec::to_config() const {
  const auto variant = parse_variant(algorithm);
  const auto prob = parsed_problem();
  if (n < 1) throw ConfigError("n", "n must be at least 1");
  if (runs < 1) throw ConfigError("runs", "runs must be at least 1");
  if (format != "csv" && format != "json") throw ConfigError("format", "format must be csv or json");
  for (const int t : targets) {
    if (t < 0 || t > n) throw ConfigError("targets", fmt::format("target {} outside [0, {}]", t, n));
  }
  AlgorithmConfig cfg;
  cfg.variant = variant;
  cfg.lambda = lambda.value_or(variant == Variant::RLS || variant == Variant::OracleRLS ? 1 : 2);
  cfg.sigma = sigma;
  cfg.F = F;
  cfg.r_init = r_init;
  cfg.meta_r = meta_r;
  cfg.meta_var = meta_var;
  cfg.budget = budget;
  if (oracle) cfg.oracle_kind = parse_oracle_kind(*oracle);
  cfg.validate(prob, n);
  return cfg;
}

std::vector<int> ExperimentSpec::resolved_targets() const { return targets.empty() ? all_targets(n) : targets; }

int cmd_run(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
  AlgorithmConfig cfg;
  try {
    cfg = spec.to_config();
  } catch (const ConfigError& e) {
    err << config_error_message(e) << '\n';
    return kExitUsage;
  }
  const auto problem = spec.parsed_problem();
  try {
    fs::create_directories(spec.output);
    const auto logs = execute_batch(cfg, problem, spec.n, spec.runs, spec.seed, spec.jobs);
    const auto targets = spec.resolved_targets();

    std::vector<SummaryRow> rows;
    rows.reserve(targets.size());
    for (const int t : targets) {
      rows.push_back({std::string(to_string(cfg.variant)), problem, spec.n, cfg.lambda, summarize(logs, t)});
    }

    const auto stem = fmt::format("{}_{}_n{}_lambda{}", to_string(cfg.variant), to_string(problem), spec.n, cfg.lambda);
    FileBatch files;
    files.add(spec.output / (stem + "_raw.csv"), [&](std::ostream& o) { write_raw_csv(o, logs, targets); });
    files.add(spec.output / (stem + "_summary.csv"), [&](std::ostream& o) { write_summary_csv(o, rows); });
    if (spec.format == "json") {
      files.add(spec.output / (stem + "_summary.json"), [&](std::ostream& o) { write_summary_json(o, rows); });
    }
    files.commit();

    const auto optimum = summarize(logs, spec.n);
    out << fmt::format("{} {} n={} lambda={}: aht={} rsd={} ({} of {} runs reached the optimum)\n",
                       display_name(cfg), to_string(problem), spec.n, cfg.lambda, format_number(optimum.aht),
                       format_number(optimum.rsd), optimum.count, optimum.runs);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_oracle(const std::string& problem_name, int n, const fs::path& path, std::ostream& out, std::ostream& err) {
  Problem problem;
  try {
    problem = parse_problem(problem_name);
    if (n < 1) throw std::invalid_argument("n must be at least 1");
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    const auto table = problem == Problem::OneMax ? onemax_drift_table(n) : lo_opt_table(n);
    const fs::path target = path.empty() ? default_output_dir() / fmt::format("oracle_{}_n{}.csv", problem_name, n) : path;
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    FileBatch files;
    files.add(target, [&](std::ostream& o) { write_strength_table_csv(o, problem, table); });
    files.commit();

    int threshold = n - 1;
    while (threshold > 0 && table(threshold - 1) == 1) --threshold;
    out << fmt::format("{} n={}: k=1 for all v >= {}; k(0)={}; written to {}\n", problem_name, n, threshold, table(0),
                       target.string());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_figure(int id, const FigureOptions& opts, std::ostream& out, std::ostream& err) {
  if (id < 1 || id > 4) {
    err << "error: unknown figure " << id << " (expected 1, 2, 3 or 4)\n";
    return kExitUsage;
  }
  if (opts.runs < 1) {
    err << "error: runs must be at least 1\n";
    return kExitUsage;
  }
  for (const int n : opts.n_list) {
    if (n < 2) {
      err << "error: --n-list entries must be at least 2\n";
      return kExitUsage;
    }
  }
  try {
    resolve_problems(opts.problems);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    fs::create_directories(opts.output);
    switch (id) {
      case 1: return figure_fixed_target(opts, out);
      case 2: return figure_oracle(opts, out);
      case 3: return figure_sweep(3, Problem::OneMax, opts, out);
      default: return figure_sweep(4, Problem::LeadingOnes, opts, out);
    }
  } catch (const ConfigError& e) {
    err << config_error_message(e) << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Benchmarks (1+lambda) EAs with normalized standard bit mutation on OneMax and LeadingOnes", "nsbm"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  ExperimentSpec spec;
  spec.output = default_output_dir();
  std::string spec_file;
  std::string output;
  auto* run = app.add_subcommand("run", "Run a batch of independent runs and write raw and summary files");
  run->add_option("--algorithm", spec.algorithm, "two-rate, half, norm, var, meta, ea, rls, oracle-rls")
      ->capture_default_str();
  run->add_option("--problem", spec.problem, "onemax or leadingones")->capture_default_str();
  run->add_option("--n", spec.n, "Dimension")->capture_default_str();
  run->add_option("--lambda", spec.lambda, "Offspring per iteration (default 1 for rls variants, else 2)");
  run->add_option("--sigma", spec.sigma, "Interval scale of half")->capture_default_str();
  run->add_option("--F", spec.F, "Variance discount of var")->capture_default_str();
  run->add_option("--r-init", spec.r_init, "Initial strength (default 2; plain ea rate numerator default 1)");
  run->add_option("--meta-r", spec.meta_r, "Static mean strength of meta")->capture_default_str();
  run->add_option("--meta-var", spec.meta_var, "Static strength variance of meta")->capture_default_str();
  run->add_option("--oracle", spec.oracle, "Strength table of oracle-rls: drift (onemax) or opt (leadingones)");
  run->add_option("--runs", spec.runs, "Independent runs")->capture_default_str();
  run->add_option("--budget", spec.budget, "Evaluation budget per run (default 1000 n ln n / 100 n^2)");
  run->add_option("--seed", spec.seed, "Master seed")->capture_default_str();
  run->add_option("--targets", spec.targets, "Comma-separated targets (default: all of 0..n)")->delimiter(',');
  run->add_option("--output", output, "Output directory")->envname(kOutputDirEnv);
  run->add_option("--format", spec.format, "Summary format: csv or json (json also keeps csv)")->capture_default_str();
  run->add_option("--jobs", spec.jobs, "Concurrent runs (0 = all cores)")->capture_default_str();
  run->add_option("--spec", spec_file, "key=value file with any of the flags above; flags given explicitly win");

  std::string oracle_problem = "onemax";
  int oracle_n = 1000;
  std::string oracle_output;
  auto* oracle = app.add_subcommand("oracle", "Write the drift-maximizing (onemax) or optimal (leadingones) strengths");
  oracle->add_option("--problem", oracle_problem, "onemax or leadingones")->capture_default_str();
  oracle->add_option("--n", oracle_n, "Dimension")->capture_default_str();
  oracle->add_option("--output", oracle_output, "CSV path (default: <output dir>/oracle_<problem>_n<n>.csv)");

  FigureOptions fig;
  fig.output = default_output_dir();
  int figure_id = 0;
  std::string figure_output;
  auto* figure = app.add_subcommand("figure", "Regenerate the data behind figure 1, 2, 3 or 4");
  figure->add_option("id", figure_id, "Figure number")->required();
  figure->add_option("--n-list", fig.n_list, "Comma-separated dimensions")->delimiter(',');
  figure->add_option("--problem", fig.problems, "Problems for figures 1 and 2 (default both)")->delimiter(',');
  figure->add_option("--runs", fig.runs, "Independent runs per configuration")->capture_default_str();
  figure->add_option("--seed", fig.seed, "Master seed")->capture_default_str();
  figure->add_option("--output", figure_output, "Output directory")->envname(kOutputDirEnv);
  figure->add_option("--jobs", fig.jobs, "Concurrent runs (0 = all cores)")->capture_default_str();

  std::vector<std::string> argv = args;
  try {
    // Spliced in front of the explicit flags so that those take precedence.
    const auto it = std::find(argv.begin(), argv.end(), "--spec");
    if (!argv.empty() && argv.front() == "run" && it != argv.end() && std::next(it) != argv.end()) {
      auto extra = spec_file_args(*std::next(it));
      argv.insert(argv.begin() + 1, extra.begin(), extra.end());
    }
  } catch (const ConfigError& e) {
    err << config_error_message(e) << '\n';
    return kExitUsage;
  }

  try {
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (*run) {
    if (!output.empty()) spec.output = output;
    return cmd_run(spec, out, err);
  }
  if (*oracle) return cmd_oracle(oracle_problem, oracle_n, oracle_output, out, err);
  if (!figure_output.empty()) fig.output = figure_output;
  return cmd_figure(figure_id, fig, out, err);
}

}  // namespace nsbm::cli

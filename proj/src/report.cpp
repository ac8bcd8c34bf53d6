#include "nsbm/report.hpp"

#include <cmath>
#include <numeric>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

namespace nsbm {

namespace {

constexpr const char* kQuantileColumns[] = {"q02", "q10", "q25", "q50", "q75", "q90", "q98"};

}  // namespace

std::vector<int> all_targets(int n) {
  std::vector<int> targets(static_cast<std::size_t>(n) + 1);
  std::iota(targets.begin(), targets.end(), 0);
  return targets;
}

std::string format_number(double value) {
  if (std::isnan(value)) return {};
  return fmt::format("{}", value);
}

void write_raw_csv(std::ostream& out, std::span<const FixedTargetLog> logs, std::span<const int> targets) {
  out << "run_id,target,evaluations\n";
  for (std::size_t run_id = 0; run_id < logs.size(); ++run_id) {
    for (const int t : targets) {
      if (const auto hit = logs[run_id].first_hit(t)) out << fmt::format("{},{},{}\n", run_id, t, *hit);
    }
  }
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << "algorithm,problem,n,lambda,target,count,aht,rsd";
  for (const char* q : kQuantileColumns) out << ',' << q;
  out << '\n';
  for (const auto& row : rows) {
    const auto& s = row.stats;
    out << fmt::format("{},{},{},{},{},{},{},{}", row.algorithm, to_string(row.problem), row.n, row.lambda, s.target,
                       s.count, format_number(s.aht), format_number(s.rsd));
    for (const double q : s.quantiles) out << ',' << format_number(q);
    out << '\n';
  }
}

void write_summary_json(std::ostream& out, std::span<const SummaryRow> rows) {
  using Json = nlohmann::ordered_json;
  auto number = [](double v) -> Json { return std::isnan(v) ? Json(nullptr) : Json(v); };
  auto doc = Json::array();
  for (const auto& row : rows) {
    const auto& s = row.stats;
    Json item = {{"algorithm", row.algorithm},
                 {"problem", std::string(to_string(row.problem))},
                 {"n", row.n},
                 {"lambda", row.lambda},
                 {"target", s.target},
                 {"count", s.count},
                 {"aht", number(s.aht)},
                 {"rsd", number(s.rsd)}};
    for (std::size_t q = 0; q < s.quantiles.size(); ++q) item[kQuantileColumns[q]] = number(s.quantiles[q]);
    doc.push_back(std::move(item));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace nsbm

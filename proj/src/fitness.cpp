#include "nsbm/fitness.hpp"

#include <stdexcept>
#include <string>

namespace nsbm {

std::string_view to_string(Problem problem) noexcept {
  return problem == Problem::OneMax ? "onemax" : "leadingones";
}

Problem parse_problem(std::string_view name) {
  if (name == "onemax") return Problem::OneMax;
  if (name == "leadingones") return Problem::LeadingOnes;
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

Evaluator::Evaluator(Problem problem, int n, std::uint64_t budget)
    : problem_(problem), n_(n), budget_(budget), log_(n) {}

int Evaluator::operator()(const BitString& x) {
  if (done()) throw std::logic_error("Evaluator: evaluation requested after budget or optimum");
  const int f = fitness(problem_, x);
  log_.record(counter_.tick(), f);
  return f;
}

}  // namespace nsbm

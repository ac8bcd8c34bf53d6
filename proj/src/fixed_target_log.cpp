#include "nsbm/fixed_target_log.hpp"

#include <stdexcept>

namespace nsbm {

FixedTargetLog::FixedTargetLog(int n) : n_(n), first_hit_(static_cast<std::size_t>(n) + 1, kUnreached) {
  if (n < 1) throw std::invalid_argument("FixedTargetLog: dimension must be at least 1");
}

void FixedTargetLog::record(std::uint64_t evaluation, int fitness) {
  if (fitness < 0 || fitness > n_) throw std::out_of_range("FixedTargetLog::record: fitness outside [0, n]");
  evaluations_ = evaluation;
  for (int v = reached_max_ + 1; v <= fitness; ++v) first_hit_[static_cast<std::size_t>(v)] = evaluation;
  if (fitness > reached_max_) reached_max_ = fitness;
}

std::optional<std::uint64_t> FixedTargetLog::first_hit(int target) const {
  if (!reached(target)) return std::nullopt;
  return first_hit_[static_cast<std::size_t>(target)];
}

}  // namespace nsbm

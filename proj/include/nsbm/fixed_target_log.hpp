#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace nsbm {

// Per-run first-hitting times: for every fitness value v in [0, n], the
// evaluation count at which a point with f >= v was first evaluated.
// Stored densely; 0 marks an unreached target (real counts start at 1).
class FixedTargetLog {
 public:
  static constexpr std::uint64_t kUnreached = 0;

  FixedTargetLog() = default;
  explicit FixedTargetLog(int n);

  /// Called once per evaluation with the running evaluation count.
  void record(std::uint64_t evaluation, int fitness);

  int dimension() const noexcept { return n_; }
  /// Best fitness seen so far, or -1 before the first record.
  int reached_max() const noexcept { return reached_max_; }
  /// Total evaluations recorded.
  std::uint64_t evaluations() const noexcept { return evaluations_; }

  bool reached(int target) const noexcept { return target >= 0 && target <= reached_max_; }
  std::optional<std::uint64_t> first_hit(int target) const;
  const std::vector<std::uint64_t>& first_hits() const noexcept { return first_hit_; }

  friend bool operator==(const FixedTargetLog&, const FixedTargetLog&) = default;

 private:
  int n_ = 0;
  int reached_max_ = -1;
  std::uint64_t evaluations_ = 0;
  std::vector<std::uint64_t> first_hit_;
};

}  // namespace nsbm

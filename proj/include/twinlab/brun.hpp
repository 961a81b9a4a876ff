// Partial sums of Σ (1/p + 1/(p+2)) over twin pairs and a numerical walk
// through the comparison-test argument for their convergence.
//
// Pairs are indexed from (3, 5) as r = 1, so q_r is the smaller member of the
// r-th pair and r = π₂(q_r + 2).

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace twinlab::brun {

struct BrunSum {
  std::uint64_t limit = 0;
  double value = 0.0;
  std::uint64_t pair_count = 0;  // r
  std::uint64_t last_q = 0;      // q_r, 0 when no pair
};

/// Ascending compensated sum over pairs with p + 2 <= limit.
BrunSum brun_partial_sum(std::uint64_t limit);

/// brun_partial_sum at every checkpoint (ascending) in one sieve pass.
/// Throws std::invalid_argument for unsorted checkpoints.
std::vector<BrunSum> brun_series(std::span<const std::uint64_t> checkpoints);

/// Σ 1/q_r and Σ 1/(q_r + 2) accumulated separately.
struct SplitReciprocals {
  double lower_members = 0.0;
  double upper_members = 0.0;
};
SplitReciprocals split_reciprocal_sums(std::uint64_t limit);

enum class BoundKind : std::uint8_t {
  count_bound,       // r <= K·q_r/ln²(q_r)
  reciprocal_bound,  // 1/q_r <= K/(r·ln²(r+1))
  index_bound,       // q_r > r + 1
};

struct Violation {
  std::uint64_t r = 0;
  std::uint64_t q = 0;
  BoundKind kind = BoundKind::count_bound;
};

struct BoundScan {
  std::uint64_t pairs_checked = 0;
  std::vector<Violation> violations;
  /// max over r of r/(q_r/ln²q_r): the smallest K that would pass the count bound.
  double max_count_ratio = 0.0;
  std::uint64_t max_count_ratio_q = 0;
};

/// Checks both comparison inequalities and q_r > r + 1 for every pair with
/// p + 2 <= limit. Throws std::invalid_argument unless K > 0.
BoundScan comparison_bound_check(std::uint64_t limit, double K);

struct DominatingPartial {
  double partial = 0.0;
  /// K·Σ_{r > r_max} 1/(r ln²(r+1)) is at most this (integral test).
  double tail_bound = 0.0;
};

/// K·Σ_{r=1}^{r_max} 1/(r·ln²(r+1)). Throws std::invalid_argument for r_max = 0
/// or K <= 0.
DominatingPartial dominating_series_partial(std::uint64_t r_max, double K);

struct PrefixDomination {
  std::uint64_t pairs_checked = 0;
  /// First r where Σ_{i<=r} 1/q_i > K·Σ_{i<=r} 1/(i ln²(i+1)); 0 if none.
  std::uint64_t first_violation = 0;
  /// min over r of (dominating prefix − reciprocal prefix)
  double min_slack = 0.0;
  double reciprocal_total = 0.0;
  double dominating_total = 0.0;
};

/// Prefix-by-prefix comparison for all pairs with p + 2 <= limit.
PrefixDomination prefix_domination_check(std::uint64_t limit, double K);

}  // namespace twinlab::brun

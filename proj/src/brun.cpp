#include "twinlab/brun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "twinlab/sieve.hpp"
#include "twinlab/summation.hpp"

namespace twinlab::brun {

namespace {

void check_k(double K) {
  if (!(K > 0.0)) throw std::invalid_argument("K must be positive");
}

long double dominating_term(std::uint64_t r) {
  const long double l = std::log1p(static_cast<long double>(r));
  return 1.0L / (r * l * l);
}

}  // namespace

std::vector<BrunSum> brun_series(std::span<const std::uint64_t> checkpoints) {
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw std::invalid_argument("brun_series: checkpoints must be ascending");
  }
  std::vector<BrunSum> out;
  if (checkpoints.empty()) return out;
  CompensatedSum<long double> acc;
  std::uint64_t r = 0, last_q = 0;
  std::size_t next = 0;
  auto flush_until = [&](std::uint64_t top) {
    // emit every checkpoint below `top`, i.e. not yet reached by a pair with p+2 = top
    while (next < checkpoints.size() && checkpoints[next] < top) {
      out.push_back({checkpoints[next], static_cast<double>(acc.value()), r, last_q});
      ++next;
    }
  };
  sieve::for_each_twin_pair(checkpoints.back(), [&](const sieve::TwinPair& t) {
    flush_until(t.upper());
    const long double p = t.p;
    acc.add(1.0L / p);
    acc.add(1.0L / (p + 2));
    ++r;
    last_q = t.p;
  });
  flush_until(std::numeric_limits<std::uint64_t>::max());
  return out;
}

BrunSum brun_partial_sum(std::uint64_t limit) {
  const std::uint64_t cp[] = {limit};
  return brun_series(cp).front();
}

SplitReciprocals split_reciprocal_sums(std::uint64_t limit) {
  CompensatedSum<long double> lower, upper;
  sieve::for_each_twin_pair(limit, [&](const sieve::TwinPair& t) {
    lower.add(1.0L / t.p);
    upper.add(1.0L / (t.p + 2.0L));
  });
  return {static_cast<double>(lower.value()), static_cast<double>(upper.value())};
}

BoundScan comparison_bound_check(std::uint64_t limit, double K) {
  check_k(K);
  BoundScan scan;
  std::uint64_t r = 0;
  sieve::for_each_twin_pair(limit, [&](const sieve::TwinPair& t) {
    ++r;
    const long double q = t.p;
    const long double lq = std::log(q);
    const long double count_ratio = r / (q / (lq * lq));
    if (count_ratio > scan.max_count_ratio) {
      scan.max_count_ratio = static_cast<double>(count_ratio);
      scan.max_count_ratio_q = t.p;
    }
    if (count_ratio > K) scan.violations.push_back({r, t.p, BoundKind::count_bound});
    if (1.0L / q > K * dominating_term(r)) scan.violations.push_back({r, t.p, BoundKind::reciprocal_bound});
    if (!(t.p > r + 1)) scan.violations.push_back({r, t.p, BoundKind::index_bound});
  });
  scan.pairs_checked = r;
  return scan;
}

DominatingPartial dominating_series_partial(std::uint64_t r_max, double K) {
  check_k(K);
  if (r_max == 0) throw std::invalid_argument("dominating_series_partial: r_max must be >= 1");
  CompensatedSum<long double> acc;
  for (std::uint64_t r = 1; r <= r_max; ++r) acc.add(dominating_term(r));
  DominatingPartial out;
  out.partial = static_cast<double>(K * acc.value());
  // 1/(r ln²(r+1)) <= 1/(r ln²r) for r >= 2, and the latter is decreasing, so
  // Σ_{r>R} <= ∫_R^∞ dx/(x ln²x) = 1/ln R. R = 1 adds the r = 2 term by hand.
  const long double tail = r_max >= 2 ? 1.0L / std::log(static_cast<long double>(r_max))
                                      : dominating_term(2) + 1.0L / std::log(2.0L);
  out.tail_bound = static_cast<double>(K * tail);
  return out;
}

PrefixDomination prefix_domination_check(std::uint64_t limit, double K) {
  check_k(K);
  PrefixDomination out;
  out.min_slack = std::numeric_limits<double>::infinity();
  CompensatedSum<long double> reciprocal, dominating;
  std::uint64_t r = 0;
  sieve::for_each_twin_pair(limit, [&](const sieve::TwinPair& t) {
    ++r;
    reciprocal.add(1.0L / t.p);
    dominating.add(K * dominating_term(r));
    const long double slack = dominating.value() - reciprocal.value();
    if (slack < out.min_slack) out.min_slack = static_cast<double>(slack);
    if (slack < 0 && out.first_violation == 0) out.first_violation = r;
  });
  out.pairs_checked = r;
  out.reciprocal_total = static_cast<double>(reciprocal.value());
  out.dominating_total = static_cast<double>(dominating.value());
  if (r == 0) out.min_slack = 0.0;
  return out;
}

}  // namespace twinlab::brun

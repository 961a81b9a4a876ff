#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "twinlab/sieve.hpp"

namespace twinlab::stats {

struct ChiSquareResult {
  double statistic = 0.0;
  unsigned dof = 0;
  double p_value = 1.0;
};

/// Regularized upper incomplete gamma Q(a, x) = Γ(a, x)/Γ(a), a > 0, x >= 0.
double gamma_q(double a, double x);

/// Survival function of the chi-square distribution.
double chi_square_sf(double statistic, unsigned dof);

/// Goodness of fit against equal expected counts total/k.
/// Throws std::invalid_argument for fewer than 2 categories or a zero total.
ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts);

struct ProportionRow {
  std::uint64_t n = 0;
  double p1 = 0.0;
  double p7 = 0.0;
  double p9 = 0.0;
  ChiSquareResult chi2;
};

struct ProportionSeries {
  std::vector<ProportionRow> rows;
  /// Checkpoints left out because no classed pair lies below them.
  std::vector<std::uint64_t> skipped;
};

/// Class shares c_i/(pi2 − exceptional) per checkpoint, with the chi-square
/// test of the three class counts.
ProportionSeries proportion_series(const sieve::CensusTable& census);

/// max_i |p_i − 1/3|
double max_deviation(const ProportionRow& row);

}  // namespace twinlab::stats

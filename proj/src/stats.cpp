#include "twinlab/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace twinlab::stats {

double gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) throw std::domain_error("gamma_q: need a > 0 and x >= 0");
  return boost::math::gamma_q(a, x);
}

double chi_square_sf(double statistic, unsigned dof) {
  if (dof == 0) throw std::invalid_argument("chi_square_sf: dof must be positive");
  return gamma_q(dof / 2.0, statistic / 2.0);
}

ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts) {
  if (counts.size() < 2) throw std::invalid_argument("chi_square_uniform: need >= 2 categories");
  std::uint64_t total = 0;
  for (const auto c : counts) total += c;
  if (total == 0) throw std::invalid_argument("chi_square_uniform: all counts are zero");

  // Σ(O−E)²/E with E = T/k, written as Σ(k·O − T)²/(k·T) to stay exact for integers
  const long double k = counts.size();
  const long double T = total;
  long double acc = 0.0L;
  for (const auto c : counts) {
    const long double d = k * c - T;
    acc += d * d;
  }
  ChiSquareResult r;
  r.statistic = static_cast<double>(acc / (k * T));
  r.dof = static_cast<unsigned>(counts.size() - 1);
  r.p_value = chi_square_sf(r.statistic, r.dof);
  return r;
}

ProportionSeries proportion_series(const sieve::CensusTable& census) {
  ProportionSeries out;
  for (const auto& row : census.rows) {
    const std::uint64_t classed = row.pi2 - row.exceptional;
    if (classed == 0) {
      out.skipped.push_back(row.n);
      continue;
    }
    ProportionRow p;
    p.n = row.n;
    const double denom = static_cast<double>(classed);
    p.p1 = row.c1 / denom;
    p.p7 = row.c7 / denom;
    p.p9 = row.c9 / denom;
    const std::array<std::uint64_t, 3> counts{row.c1, row.c7, row.c9};
    p.chi2 = chi_square_uniform(counts);
    out.rows.push_back(p);
  }
  return out;
}

double max_deviation(const ProportionRow& row) {
  constexpr double third = 1.0 / 3.0;
  return std::max({std::fabs(row.p1 - third), std::fabs(row.p7 - third), std::fabs(row.p9 - third)});
}

}  // namespace twinlab::stats

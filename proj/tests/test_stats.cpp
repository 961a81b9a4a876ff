#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "twinlab/sieve.hpp"
#include "twinlab/stats.hpp"

using namespace twinlab;
using namespace twinlab::stats;

namespace {

// Q(m, x) for integer m: e^{-x} Σ_{j<m} x^j/j!
double q_integer(unsigned m, double x) {
  double term = 1.0, s = 0.0;
  for (unsigned j = 0; j < m; ++j) {
    s += term;
    term *= x / (j + 1);
  }
  return std::exp(-x) * s;
}

}  // namespace

TEST_CASE("gamma_q against closed forms") {
  for (const unsigned m : {1u, 2u, 3u, 5u, 10u}) {
    for (const double x : {0.01, 0.5, 1.0, 2.5, 7.0, 15.0, 40.0}) {
      CAPTURE(m);
      CAPTURE(x);
      CHECK(gamma_q(m, x) == doctest::Approx(q_integer(m, x)).epsilon(1e-12));
    }
  }
  for (const double x : {0.001, 0.3, 1.0, 4.0, 20.0}) {
    CAPTURE(x);
    CHECK(gamma_q(0.5, x) == doctest::Approx(std::erfc(std::sqrt(x))).epsilon(1e-12));
  }
  CHECK(gamma_q(2.0, 0.0) == 1.0);
  CHECK_THROWS_AS(gamma_q(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(gamma_q(1.0, -1.0), std::domain_error);
}

TEST_CASE("chi-square examples") {
  const std::vector<std::uint64_t> flat{3, 3, 3};
  const auto a = chi_square_uniform(flat);
  CHECK(a.statistic == 0.0);
  CHECK(a.dof == 2);
  CHECK(a.p_value == 1.0);

  const std::vector<std::uint64_t> skew{10, 10, 40};
  const auto b = chi_square_uniform(skew);
  CHECK(b.statistic == doctest::Approx(30.0).epsilon(1e-14));
  CHECK(b.p_value == doctest::Approx(std::exp(-15.0)).epsilon(1e-10));

  CHECK_THROWS_AS(chi_square_uniform(std::vector<std::uint64_t>{0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(chi_square_uniform(std::vector<std::uint64_t>{5}), std::invalid_argument);
  CHECK_THROWS_AS(chi_square_sf(1.0, 0), std::invalid_argument);
}

TEST_CASE("chi-square is invariant under permutation") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> pick(0, 1000);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::uint64_t> c(5);
    for (auto& v : c) v = pick(rng);
    c[0] += 1;
    const auto ref = chi_square_uniform(c);
    std::shuffle(c.begin(), c.end(), rng);
    const auto perm = chi_square_uniform(c);
    CHECK(perm.statistic == doctest::Approx(ref.statistic).epsilon(1e-13));
    CHECK(ref.p_value >= 0.0);
    CHECK(ref.p_value <= 1.0);
  }
}

TEST_CASE("chi-square p-value decreases with the statistic") {
  for (const unsigned dof : {1u, 2u, 5u}) {
    double prev = 1.0;
    for (double s = 0.1; s < 100; s *= 1.5) {
      const double p = chi_square_sf(s, dof);
      REQUIRE(p < prev);
      prev = p;
    }
  }
}

TEST_CASE("proportions at small checkpoints") {
  const auto t = sieve::census(200, std::vector<std::uint64_t>{4, 7, 80});
  const auto s = proportion_series(t);
  CHECK(s.skipped == std::vector<std::uint64_t>{4, 7});
  REQUIRE(s.rows.size() == 1);
  const auto& r = s.rows[0];
  CHECK(r.n == 80);
  // classed pairs 11, 17, 29, 41, 59, 71
  CHECK(r.p1 == doctest::Approx(3.0 / 6));
  CHECK(r.p7 == doctest::Approx(1.0 / 6));
  CHECK(r.p9 == doctest::Approx(2.0 / 6));
}

TEST_CASE("proportion series to 1e7") {
  const auto cps = sieve::decade_checkpoints(10000000);
  const auto s = proportion_series(sieve::census(10000000, cps));
  REQUIRE(!s.rows.empty());
  for (const auto& r : s.rows) CHECK(r.p1 + r.p7 + r.p9 == doctest::Approx(1.0).epsilon(1e-14));

  const auto& last = s.rows.back();
  CHECK(last.n == 10000000);
  CHECK(max_deviation(last) < 0.01);
  CHECK(last.chi2.statistic == doctest::Approx(2.1553).epsilon(1e-4));
  CHECK(last.chi2.p_value > 0.01);

  const auto at = [&](std::uint64_t n) {
    return *std::find_if(s.rows.begin(), s.rows.end(), [&](const ProportionRow& r) { return r.n == n; });
  };
  CHECK(max_deviation(at(10000000)) <= max_deviation(at(10000)));
}

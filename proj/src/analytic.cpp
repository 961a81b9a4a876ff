#include "twinlab/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "twinlab/sieve.hpp"
#include "twinlab/summation.hpp"

namespace twinlab::analytic {

namespace {

constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;
constexpr long double kLn2 = 0.693147180559945309417232121458176568L;
constexpr std::uint32_t kPrimeCutoff = 10000;

using GaussKronrod = boost::math::quadrature::gauss_kronrod<long double, 31>;
constexpr unsigned kMaxQuadratureDepth = 20;
constexpr long double kQuadratureTolerance = 1e-16L;

int mobius(unsigned n) {
  int mu = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

// ln ζ_M(s) = ln ζ(s) + Σ_{p<=M} ln(1 − p⁻ˢ), the zeta function with the
// Euler factors of primes <= M removed.
long double log_rough_zeta(long double s, const std::vector<std::uint32_t>& odd_primes) {
  CompensatedSum<long double> acc;
  acc.add(std::log(zeta(s)));
  acc.add(std::log1p(-std::pow(2.0L, -s)));
  for (const std::uint32_t p : odd_primes) acc.add(std::log1p(-std::pow(static_cast<long double>(p), -s)));
  return acc.value();
}

// Upper bound for P_M(k) = Σ_{p>M} p⁻ᵏ <= Σ_{n>M} n⁻ᵏ <= M^{1−k}/(k−1).
long double prime_zeta_tail_bound(unsigned k, long double cutoff) {
  return std::pow(cutoff, 1.0L - k) / (k - 1);
}

// Bound on Σ_{k>K} (2ᵏ−2)/k · P_M(k). Ratio of consecutive bounds is < 2/M.
long double series_remainder_bound(unsigned K, long double cutoff) {
  const unsigned k = K + 1;
  const long double first = std::ldexp(1.0L, static_cast<int>(k)) / k * prime_zeta_tail_bound(k, cutoff);
  return first / (1.0L - 2.0L / cutoff);
}

long double hl_integrand_log_space(long double t) { return std::exp(t) / (t * t); }

}  // namespace

const char* to_string(IntegralMethod m) noexcept {
  switch (m) {
    case IntegralMethod::quadrature: return "quadrature";
    case IntegralMethod::li_identity: return "li_identity";
    case IntegralMethod::expansion: return "expansion";
    case IntegralMethod::monte_carlo: return "monte_carlo";
    case IntegralMethod::qmc_lds: return "qmc_lds";
  }
  return "?";
}

long double zeta(long double s) {
  if (!(s >= 2.0L)) throw std::domain_error("zeta: s must be >= 2");
  return boost::math::zeta(s);
}

ConstantEstimate twin_prime_constant_detail(double tolerance) {
  if (!(tolerance >= 1e-15 && tolerance <= 1e-3)) {
    throw std::invalid_argument("twin_prime_constant: tolerance must lie in [1e-15, 1e-3]");
  }
  const auto primes = sieve::small_odd_primes(kPrimeCutoff);
  const long double cutoff = kPrimeCutoff;

  CompensatedSum<long double> log_c2;
  for (const std::uint32_t p : primes) {
    const long double pm1 = p - 1.0L;
    log_c2.add(std::log1p(-1.0L / (pm1 * pm1)));
  }

  // ln(1 − 1/(p−1)²) = −Σ_{k≥2} (2ᵏ−2)/k · p⁻ᵏ
  unsigned K = 2;
  while (series_remainder_bound(K, cutoff) > tolerance / 8) ++K;

  for (unsigned k = 2; k <= K; ++k) {
    // P_M(k) = Σ_j μ(j)/j · ln ζ_M(jk)
    CompensatedSum<long double> pk;
    for (unsigned j = 1;; ++j) {
      const unsigned s = j * k;
      if (prime_zeta_tail_bound(s, cutoff) < 1e-24L) break;
      const int mu = mobius(j);
      if (mu != 0) pk.add(mu * log_rough_zeta(s, primes) / j);
    }
    const long double weight = (std::ldexp(1.0L, static_cast<int>(k)) - 2.0L) / k;
    log_c2.add(-weight * pk.value());
  }

  ConstantEstimate est;
  const long double value = std::exp(log_c2.value());
  est.value = static_cast<double>(value);
  est.truncation_bound = static_cast<double>(value * series_remainder_bound(K, cutoff));
  est.prime_cutoff = kPrimeCutoff;
  est.series_terms = K - 1;
  return est;
}

double twin_prime_constant(double tolerance) {
  return twin_prime_constant_detail(tolerance).value;
}

long double li_extended(long double x, long double tolerance) {
  if (!(x > 1.0L)) throw std::domain_error("li: x must be > 1");
  if (std::isinf(x)) return x;
  const long double L = x < 2.0L ? std::log1p(x - 1.0L) : std::log(x);

  CompensatedSum<long double> series;
  long double power_over_fact = 1.0L;  // Lⁿ/(n! 2ⁿ⁻¹)
  long double odd_harmonic = 0.0L;     // Σ_{k<=(n-1)/2} 1/(2k+1)
  for (unsigned n = 1; n < 4000; ++n) {
    power_over_fact *= L / n;
    if (n > 1) power_over_fact /= 2;
    if (n % 2 == 1) odd_harmonic += 1.0L / n;
    const long double term = power_over_fact * odd_harmonic;
    series.add(n % 2 == 1 ? term : -term);
    if (n > L && term <= tolerance * std::fabs(series.value())) break;
  }
  return kEulerGamma + std::log(L) + std::sqrt(x) * series.value();
}

double li(double x, double tolerance) {
  return static_cast<double>(li_extended(x, static_cast<long double>(tolerance) * 1e-2L));
}

double li_by_quadrature(double x) {
  if (!(x > 1.0)) throw std::domain_error("li: x must be > 1");
  const long double L = x < 2.0 ? std::log1p(x - 1.0L) : std::log(static_cast<long double>(x));
  auto f = [](long double u) { return u == 0.0L ? 1.0L : std::expm1(u) / u; };
  // unit panels keep each adaptive run on a mildly varying piece of eᵘ/u
  CompensatedSum<long double> acc;
  for (long double a = 0.0L; a < L; a += 1.0L) {
    const long double b = std::min(L, a + 1.0L);
    acc.add(GaussKronrod::integrate(f, a, b, kMaxQuadratureDepth, kQuadratureTolerance));
  }
  return static_cast<double>(kEulerGamma + std::log(L) + acc.value());
}

double li2() {
  static const double value = li(2.0);
  return value;
}

IntegralEstimate hl_integral(double n, IntegralMethod method) {
  if (!(n >= 2.0)) throw std::domain_error("hl_integral: n must be >= 2");
  IntegralEstimate est;
  est.n = n;
  est.method = method;
  if (n == 2.0) return est;

  switch (method) {
    case IntegralMethod::li_identity: {
      const long double ln = std::log(static_cast<long double>(n));
      const long double li_n = li_extended(n);
      CompensatedSum<long double> acc;
      acc.add(li_n);
      acc.add(-li_extended(2.0L));
      acc.add(-n / ln);
      acc.add(2.0L / kLn2);
      est.value = static_cast<double>(acc.value());
      est.error_bound_or_stderr = static_cast<double>(
          8 * std::numeric_limits<long double>::epsilon() * (li_n + n / ln + 4));
      return est;
    }
    case IntegralMethod::quadrature: {
      // panels [2^j, 2^{j+1}] in x, i.e. width ln 2 in t = ln x
      const long double t_end = std::log(static_cast<long double>(n));
      CompensatedSum<long double> acc;
      double err = 0.0;
      std::uint64_t panels = 0;
      for (long double a = kLn2; a < t_end; a += kLn2) {
        const long double b = std::min(t_end, a + kLn2);
        long double panel_err = 0.0L;
        acc.add(GaussKronrod::integrate(hl_integrand_log_space, a, b, kMaxQuadratureDepth,
                                        kQuadratureTolerance, &panel_err));
        err += static_cast<double>(panel_err);
        ++panels;
      }
      est.value = static_cast<double>(acc.value());
      est.error_bound_or_stderr = err;
      est.meta.terms = panels;
      return est;
    }
    default:
      throw std::invalid_argument(std::string("hl_integral: unsupported method ") + to_string(method));
  }
}

double hl_prediction(double n) {
  static const double two_c2 = 2.0 * twin_prime_constant(1e-15);
  return two_c2 * hl_integral(n, IntegralMethod::li_identity).value;
}

unsigned max_expansion_terms(double n) {
  if (!(n > 1.0)) return 0;
  const double L = std::log(n);
  unsigned k = 0;
  while (k + 2 < L) ++k;
  return k;
}

ExpansionValue poincare_expansion(double n, unsigned k_terms) {
  if (!(n > 1.0)) throw std::domain_error("poincare_expansion: n must be > 1");
  if (k_terms == 0) throw std::invalid_argument("poincare_expansion: k_terms must be >= 1");
  const unsigned optimal = max_expansion_terms(n);
  if (k_terms > optimal) {
    throw DivergentTruncation("poincare_expansion: terms stop decreasing before term " +
                                  std::to_string(k_terms + 1) + " at n = " + std::to_string(n) +
                                  "; at most " + std::to_string(optimal) + " terms usable",
                              optimal);
  }
  const long double L = std::log(static_cast<long double>(n));
  long double term = n / L;  // k = 0
  CompensatedSum<long double> acc;
  for (unsigned k = 0; k < k_terms; ++k) {
    acc.add(term);
    term *= (k + 1) / L;
  }
  return {static_cast<double>(acc.value()), static_cast<double>(term)};
}

IntegralEstimate hl_integral_expansion(double n, unsigned k_terms) {
  const ExpansionValue e = poincare_expansion(n, k_terms);
  const long double L = std::log(static_cast<long double>(n));
  CompensatedSum<long double> acc;
  acc.add(-li_extended(2.0L));
  acc.add(2.0L / kLn2);
  long double term = n / (L * L);  // k = 1 term of li(n) − n/ln n
  for (unsigned k = 1; k < k_terms; ++k) {
    acc.add(term);
    term *= (k + 1) / L;
  }
  IntegralEstimate est;
  est.n = n;
  est.value = static_cast<double>(acc.value());
  est.method = IntegralMethod::expansion;
  est.error_bound_or_stderr = e.next_term;
  est.meta.terms = k_terms;
  return est;
}

double asymptotic_ratio(double n) {
  const long double L = std::log(static_cast<long double>(n));
  return static_cast<double>(hl_integral(n).value * L * L / n);
}

RatioBounds ratio_bounds_check(double n) {
  const long double L = std::log(static_cast<long double>(n));
  if (!(L > 1.0L)) throw std::domain_error("ratio_bounds_check: n must exceed e");
  RatioBounds r;
  r.n = n;
  r.upper = static_cast<double>(1.0L + 2.0L / L + 7.0L / (L * L));
  r.ratio = asymptotic_ratio(n);
  r.truncated_ratio = static_cast<double>(1.0L + 2.0L / L + 6.0L / (L * L) +
                                          (2.0L / kLn2 - li_extended(2.0L)) * L * L / n);
  r.holds = r.lower < r.ratio && r.ratio <= r.upper;
  r.truncated_holds = r.lower < r.truncated_ratio && r.truncated_ratio <= r.upper;
  r.aux_inequality = 1.0L / (L * L * L) >= 6.0L / (L * L * L * L);
  r.in_stated_domain = n >= 1e12;
  return r;
}

double aux_inequality_threshold() { return std::exp(6.0); }

double ratio_upper_threshold() {
  auto excess = [](double log10n) {
    const double n = std::pow(10.0, log10n);
    const double L = std::log(n);
    return asymptotic_ratio(n) - (1.0 + 2.0 / L + 7.0 / (L * L));
  };
  // excess > 0 at 1e10, < 0 at 1e16
  double lo = 10.0, hi = 16.0;
  while (hi - lo > 1e-13) {
    const double mid = (lo + hi) / 2;
    (excess(mid) > 0 ? lo : hi) = mid;
  }
  return std::pow(10.0, hi);
}

}  // namespace twinlab::analytic

// Deterministic side of the twin-prime laboratory: the twin-prime constant,
// the logarithmic integral, the Hardy-Littlewood integral  I(n) = ∫₂ⁿ dx/ln²x
// and the bound chain built on its asymptotic expansion.
//
// All functions are pure and reentrant.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace twinlab::analytic {

enum class IntegralMethod { quadrature, li_identity, expansion, monte_carlo, qmc_lds };

const char* to_string(IntegralMethod m) noexcept;

struct EstimateMeta {
  std::uint64_t terms = 0;    // series terms / panels
  std::uint64_t samples = 0;  // MC or QMC sample count
  std::uint64_t seed = 0;
};

struct IntegralEstimate {
  double n = 2.0;
  double value = 0.0;
  IntegralMethod method = IntegralMethod::li_identity;
  double error_bound_or_stderr = 0.0;
  EstimateMeta meta;
};

struct ConstantEstimate {
  double value = 0.0;
  /// Bound on the series truncation error of the returned value.
  double truncation_bound = 0.0;
  /// Primes <= prime_cutoff enter the product directly.
  std::uint32_t prime_cutoff = 0;
  /// Number of prime-zeta series terms used for the tail.
  unsigned series_terms = 0;
};

/// Twin-prime constant  C₂ = ∏_{p ≥ 3} p(p−2)/(p−1)².
///
/// Direct product over odd primes up to a cutoff M, times the tail
///   exp(−Σ_{k≥2} (2ᵏ−2)/k · P_M(k)),
/// where P_M(k) = Σ_{p>M} p⁻ᵏ is obtained from ζ by Möbius inversion.
/// Throws std::invalid_argument unless tolerance ∈ [1e-15, 1e-3].
ConstantEstimate twin_prime_constant_detail(double tolerance);
double twin_prime_constant(double tolerance = 1e-15);

/// Riemann zeta for real s >= 2 in extended precision.
long double zeta(long double s);

/// Principal-value logarithmic integral li(x) = PV ∫₀ˣ dt/ln t, x > 1.
///
/// Ramanujan's series
///   li(x) = γ + ln ln x + √x Σ_{n≥1} (−1)ⁿ⁻¹ (ln x)ⁿ / (n! 2ⁿ⁻¹) Σ_{k=0}^{⌊(n−1)/2⌋} 1/(2k+1),
/// summed until past the peak term (n > ln x) and the term magnitude falls
/// below tolerance relative to the running sum.
/// Throws std::domain_error for x <= 1.
double li(double x, double tolerance = 1e-17);
long double li_extended(long double x, long double tolerance = 1e-19L);

/// li(x) by adaptive quadrature of  γ + ln ln x + ∫₀^{ln x} (eᵘ−1)/u du.
/// Independent of the series above; used as its oracle.
double li_by_quadrature(double x);

/// li(2) evaluated by the series.
double li2();

/// ∫₂ⁿ dx/ln²x. Throws std::domain_error for n < 2 and std::invalid_argument
/// for methods other than quadrature or li_identity.
IntegralEstimate hl_integral(double n, IntegralMethod method = IntegralMethod::li_identity);

/// 2·C₂·hl_integral(n) via the li identity.
double hl_prediction(double n);

/// Thrown by poincare_expansion when the requested truncation is past the
/// point where the terms stop decreasing.
class DivergentTruncation : public std::domain_error {
 public:
  DivergentTruncation(const std::string& what, unsigned optimal_terms)
      : std::domain_error(what), optimal_terms_(optimal_terms) {}
  /// Largest term count accepted for this n (0 if none).
  unsigned optimal_terms() const noexcept { return optimal_terms_; }

 private:
  unsigned optimal_terms_;
};

struct ExpansionValue {
  double value = 0.0;
  /// Magnitude of the first omitted term, used as the error proxy.
  double next_term = 0.0;
};

/// li(n) ~ (n/ln n) Σ_{k<k_terms} k!/lnᵏn.
///
/// Accepted while the term after the first omitted one is still smaller,
/// i.e. k_terms + 1 < ln n, so the error proxy sits on the decreasing branch.
ExpansionValue poincare_expansion(double n, unsigned k_terms);

/// Largest k_terms accepted by poincare_expansion at n.
unsigned max_expansion_terms(double n);

/// ∫₂ⁿ dx/ln²x with li(n) replaced by its k_terms-term expansion:
///   −li(2) + 2/ln 2 + n Σ_{k=1}^{k_terms−1} k!/lnᵏ⁺¹n.
/// error_bound_or_stderr carries the first omitted term.
IntegralEstimate hl_integral_expansion(double n, unsigned k_terms);

struct RatioBounds {
  double n = 0.0;
  double lower = 1.0;
  /// 1 + 2/ln n + 7/ln²n
  double upper = 0.0;
  /// hl_integral(n) / (n/ln²n), li identity
  double ratio = 0.0;
  /// Same ratio from the three-term expansion 1 + 2/ln n + 6/ln²n plus the
  /// constant −li(2) + 2/ln 2 scaled by ln²n/n.
  double truncated_ratio = 0.0;
  bool holds = false;            // lower < ratio <= upper
  bool truncated_holds = false;  // lower < truncated_ratio <= upper
  bool aux_inequality = false;   // 1/ln³n >= 6/ln⁴n
  bool in_stated_domain = false; // n >= 1e12
};

/// Evaluates  1 < I(n)/(n/ln²n) <= 1 + 2/ln n + 7/ln²n  at n.
/// Throws std::domain_error for n <= e (ln n <= 1).
RatioBounds ratio_bounds_check(double n);

/// n above which 1/ln³n >= 6/ln⁴n holds: e⁶.
double aux_inequality_threshold();

/// Smallest n (bisection, relative 1e-12) above which the exact ratio
/// I(n)/(n/ln²n) stays below 1 + 2/ln n + 7/ln²n.
double ratio_upper_threshold();

/// I(n)/(n/ln²n), li identity.
double asymptotic_ratio(double n);

}  // namespace twinlab::analytic

// Monte Carlo estimation of  ∫₂ⁿ dx/ln²x  and convergence-rate studies.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "twinlab/analytic.hpp"

namespace twinlab::montecarlo {

/// Counter-based generator: the k-th draw of stream (seed, stream) is
/// splitmix64(key ⊕ golden·k), so streams and offsets are addressable
/// without state and parallel blocks reproduce a serial run exactly.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix(key_ + 0x9e3779b97f4a7c15ULL * (counter + 1));
  }
  /// Uniform in [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
};

enum class McMode {
  /// Textbook estimator: (n−2)·mean f(Uᵢ), Uᵢ uniform on [2, n].
  uniform,
  /// Grid-times-random construction: f on an even grid of N nodes over [2, n],
  /// Σ_{j<N−1} n·f(x_j)·U_j / N. Non-standard; E[U] = 1/2 halves the result.
  annex_stratified,
};

const char* to_string(McMode m) noexcept;

struct McConfig {
  double n = 2.0;
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  McMode mode = McMode::uniform;
};

using Integrand = std::function<double(double)>;

/// 1/ln²x
double hl_integrand(double x);

/// Throws std::invalid_argument if n < 2 or samples == 0.
analytic::IntegralEstimate mc_integral(const McConfig& config);
analytic::IntegralEstimate mc_integral(const McConfig& config, const Integrand& f);

struct ConvergenceRow {
  std::uint64_t samples = 0;
  double mean_rel_err = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  /// Least-squares slope of log(mean_rel_err) on log(N); empty when some
  /// error is exactly zero.
  std::optional<double> fitted_slope;
};

struct StudyConfig {
  double n = 1e6;
  std::vector<std::uint64_t> sample_ladder;
  std::vector<std::uint64_t> seeds;
  McMode mode = McMode::uniform;
  unsigned threads = 1;  // 0 = hardware concurrency
};

/// Mean |relative error| per ladder entry against the li-identity value of
/// the integral. Throws std::invalid_argument for fewer than 2 ladder entries,
/// a non-ascending ladder or an empty seed list.
ConvergenceTable convergence_study(const StudyConfig& config);
/// Same with an injected integrand and its exact integral over [2, n].
ConvergenceTable convergence_study(const StudyConfig& config, const Integrand& f, double exact);

/// Slope of the least-squares line through (log x, log y).
double log_log_slope(std::span<const double> x, std::span<const double> y);

/// Seeds 1..count.
std::vector<std::uint64_t> seed_range(std::uint64_t count, std::uint64_t first = 1);

/// Samples per accumulation block. Blocks are reduced in index order.
inline constexpr std::uint64_t kBlockSize = 1u << 16;

}  // namespace twinlab::montecarlo

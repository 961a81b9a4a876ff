// Low-discrepancy point sets and quasi-Monte Carlo evaluation of ∫₂ⁿ dx/ln²x.
//
// Two families:
//  * gap sequences, built from prime or twin-pair gaps and normalized as
//    2·gap/max(gap), so they live in (0, 2];
//  * radical-inverse (van der Corput) points in [0, 1).
// Nothing in this module draws random numbers.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "twinlab/analytic.hpp"

namespace twinlab::lds {

enum class SourceKind { prime_gaps, twin_gaps, van_der_corput, external };

struct Source {
  SourceKind kind = SourceKind::prime_gaps;
  unsigned base = 2;  // van_der_corput only

  friend bool operator==(const Source&, const Source&) = default;
};

std::string to_string(const Source& s);
/// Parses "prime-gaps", "twin-gaps" or "vdc:<base>". Throws std::invalid_argument.
Source parse_source(const std::string& text);

inline constexpr double kCompensatingConstant = 7.39;

struct LdsSequence {
  std::vector<double> points;
  Source source;
  /// Largest raw value before normalization (0 for van der Corput).
  double raw_max = 0.0;
};

/// Radical inverse of `index` in `base`. Throws std::invalid_argument if base < 2.
double van_der_corput(std::uint64_t index, unsigned base);

/// Points with indices first .. first+count−1.
LdsSequence van_der_corput_sequence(std::size_t count, unsigned base, std::uint64_t first = 0);

/// `count` gaps: prime_gaps uses p_{k+1} − p_k over the first count+1 primes,
/// twin_gaps the distance between smaller members of consecutive twin pairs.
/// Throws std::invalid_argument for count < 2 or a non-gap source.
LdsSequence prime_gap_sequence(std::size_t count, SourceKind source = SourceKind::prime_gaps);

/// Raw (unnormalized) gaps used by prime_gap_sequence.
std::vector<std::uint64_t> raw_gaps(std::size_t count, SourceKind source);

/// Normalizes raw values as 2·v/max(v). Throws std::invalid_argument unless
/// all values are finite and positive.
LdsSequence normalize_gaps(std::span<const double> raw, Source source);

/// One real per line; blank lines and lines starting with '#' are skipped.
/// The values are normalized like gap sequences.
LdsSequence load_sequence_file(const std::filesystem::path& path);

/// Builds the sequence named by `source` with `count` points.
LdsSequence make_sequence(const Source& source, std::size_t count);

/// Weighted grid sum: f = 1/ln²x at nodes x_j = 2 + j(n−2)/L, j = 0..L−1,
///   Σ_j n · c · f(x_j) · point_j / (L + 1).
analytic::IntegralEstimate qmc_annex_weighted(double n, const LdsSequence& seq,
                                              double compensating_constant = kCompensatingConstant);

/// Plain QMC average for points in [0, 1): (n−2)/L · Σ f(2 + (n−2)·u_j).
analytic::IntegralEstimate qmc_plain_average(double n, const LdsSequence& seq);

/// Dispatches on the sequence source: van der Corput points use plain
/// averaging, gap and external sequences the weighted grid sum.
/// Throws std::invalid_argument for fewer than 2 points, std::domain_error for n < 2.
analytic::IntegralEstimate qmc_integral(double n, const LdsSequence& seq,
                                        double compensating_constant = kCompensatingConstant);

/// Exact 1-D star discrepancy
///   max_i max(i/N − x_(i), x_(i) − (i−1)/N)
/// over the sorted points. Throws std::invalid_argument for an empty set or
/// any point outside [0, 1).
double star_discrepancy_upper(std::span<const double> points);

/// Most frequent raw gap (smallest on ties).
std::uint64_t most_common_gap(std::span<const std::uint64_t> gaps);

}  // namespace twinlab::lds

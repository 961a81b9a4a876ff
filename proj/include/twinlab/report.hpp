// Comparison tables (census vs. prediction vs. MC vs. QMC) and their
// CSV / JSON encodings.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twinlab/brun.hpp"
#include "twinlab/lds.hpp"
#include "twinlab/montecarlo.hpp"
#include "twinlab/sieve.hpp"
#include "twinlab/stats.hpp"

namespace twinlab::report {

enum class Format { csv, json };

Format parse_format(const std::string& text);

/// Raised by run_report; `stage()` names the sub-computation that failed.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& what, bool invalid_input = false)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)), invalid_input_(invalid_input) {}
  const std::string& stage() const noexcept { return stage_; }
  /// True when the stage rejected its arguments rather than failing to compute.
  bool invalid_input() const noexcept { return invalid_input_; }

 private:
  std::string stage_;
  bool invalid_input_;
};

struct ComparisonRow {
  std::uint64_t n = 0;
  std::uint64_t pi2 = 0;
  double hl_pred = 0.0;
  double hl_rel_err_pct = 0.0;
  double mc_value = 0.0;
  double mc_rel_err_pct = 0.0;
  double lds_value = 0.0;
  double lds_rel_err_pct = 0.0;
};

struct ReportConfig {
  std::uint64_t limit = 1'000'000;
  std::vector<std::uint64_t> checkpoints;
  std::uint64_t mc_samples = 17548;
  std::uint64_t seed = 1;
  montecarlo::McMode mc_mode = montecarlo::McMode::uniform;
  lds::Source lds_source;
  std::optional<std::filesystem::path> lds_file;
  double compensating_constant = lds::kCompensatingConstant;
  std::uint64_t segment_size = sieve::kDefaultSegmentSize;
  unsigned threads = 1;
};

struct ReportResult {
  std::vector<ComparisonRow> rows;
  sieve::CensusTable census;
};

/// 100·|pi2 − value|/pi2
double rel_err_pct(std::uint64_t pi2, double value);

/// One row per checkpoint: census count, 2C₂·I(n), 2C₂·MC estimate and
/// 2C₂·QMC estimate with their percentage errors against the count.
ReportResult run_report(const ReportConfig& config);

/// "decades" or a comma-separated list of nonnegative integers (which may use
/// 1e9-style exponents). Throws std::invalid_argument.
std::vector<std::uint64_t> parse_checkpoints(const std::string& text, std::uint64_t limit);

/// Parses an unsigned integer, accepting "1e9" and "10^9" forms.
std::uint64_t parse_count(const std::string& text);

// ---- encodings -------------------------------------------------------------

inline constexpr const char* kComparisonHeader =
    "n,pi2,hl_pred,hl_err_pct,mc,mc_err_pct,lds,lds_err_pct";
inline constexpr const char* kCensusHeader = "n,pi2,c1,c7,c9,exceptional";
inline constexpr const char* kProportionHeader = "n,p1,p7,p9,chi2,p_value";
inline constexpr const char* kBrunHeader = "limit,r,last_q,brun_sum";
inline constexpr const char* kStudyHeader = "N,mean_rel_err,fitted_slope";

/// Reals in CSV: 6 significant digits, scientific.
std::string csv_real(double v);
/// Reals in JSON: rounded to 10 significant digits.
double json_real(double v);

void write_comparison(std::ostream& out, const std::vector<ComparisonRow>& rows, Format format);
void write_census(std::ostream& out, const sieve::CensusTable& table, Format format);
void write_proportions(std::ostream& out, const stats::ProportionSeries& series, Format format);
void write_brun(std::ostream& out, const std::vector<brun::BrunSum>& sums, Format format);
void write_study(std::ostream& out, const montecarlo::ConvergenceTable& table, Format format);

/// Inverse of write_comparison(…, Format::csv). Throws std::invalid_argument
/// on a header or field mismatch.
std::vector<ComparisonRow> read_comparison_csv(std::istream& in);

}  // namespace twinlab::report

#include "twinlab/lds.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "twinlab/montecarlo.hpp"
#include "twinlab/sieve.hpp"
#include "twinlab/summation.hpp"

namespace twinlab::lds {

namespace {

void check_n(double n) {
  if (!(n >= 2.0)) throw std::domain_error("qmc_integral: n must be >= 2");
}

void check_length(const LdsSequence& seq) {
  if (seq.points.size() < 2) throw std::invalid_argument("qmc_integral: sequence needs >= 2 points");
}

}  // namespace

std::string to_string(const Source& s) {
  switch (s.kind) {
    case SourceKind::prime_gaps: return "prime-gaps";
    case SourceKind::twin_gaps: return "twin-gaps";
    case SourceKind::van_der_corput: return "vdc:" + std::to_string(s.base);
    case SourceKind::external: return "file";
  }
  return "?";
}

Source parse_source(const std::string& text) {
  if (text == "prime-gaps") return {SourceKind::prime_gaps, 2};
  if (text == "twin-gaps") return {SourceKind::twin_gaps, 2};
  if (text.rfind("vdc:", 0) == 0) {
    unsigned base = 0;
    const char* first = text.data() + 4;
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, base);
    if (ec != std::errc{} || ptr != last || base < 2) {
      throw std::invalid_argument("invalid van der Corput base in '" + text + "'");
    }
    return {SourceKind::van_der_corput, base};
  }
  throw std::invalid_argument("unknown LDS source '" + text +
                              "' (expected prime-gaps, twin-gaps or vdc:<base>)");
}

double van_der_corput(std::uint64_t index, unsigned base) {
  if (base < 2) throw std::invalid_argument("van_der_corput: base must be >= 2");
  long double result = 0.0L;
  long double scale = 1.0L / base;
  while (index > 0) {
    result += (index % base) * scale;
    index /= base;
    scale /= base;
  }
  return static_cast<double>(result);
}

LdsSequence van_der_corput_sequence(std::size_t count, unsigned base, std::uint64_t first) {
  LdsSequence seq;
  seq.source = {SourceKind::van_der_corput, base};
  seq.points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) seq.points.push_back(van_der_corput(first + i, base));
  return seq;
}

std::vector<std::uint64_t> raw_gaps(std::size_t count, SourceKind source) {
  if (count < 2) throw std::invalid_argument("prime_gap_sequence: count must be >= 2");
  if (source != SourceKind::prime_gaps && source != SourceKind::twin_gaps) {
    throw std::invalid_argument("prime_gap_sequence: source must be prime or twin gaps");
  }
  std::vector<std::uint64_t> values;
  // grow the sieve range until count+1 values are available
  for (std::uint64_t limit = 1024;; limit *= 2) {
    values.clear();
    if (source == SourceKind::prime_gaps) {
      sieve::for_each_prime(limit, [&](std::uint64_t p) {
        if (values.size() <= count) values.push_back(p);
      });
    } else {
      sieve::for_each_twin_pair(limit, [&](const sieve::TwinPair& t) {
        if (values.size() <= count) values.push_back(t.p);
      });
    }
    if (values.size() > count) break;
  }
  std::vector<std::uint64_t> gaps(count);
  for (std::size_t i = 0; i < count; ++i) gaps[i] = values[i + 1] - values[i];
  return gaps;
}

LdsSequence normalize_gaps(std::span<const double> raw, Source source) {
  if (raw.empty()) throw std::invalid_argument("normalize_gaps: empty input");
  for (const double v : raw) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw std::invalid_argument("normalize_gaps: values must be finite and positive");
    }
  }
  LdsSequence seq;
  seq.source = source;
  seq.raw_max = *std::max_element(raw.begin(), raw.end());
  seq.points.reserve(raw.size());
  for (const double v : raw) seq.points.push_back(v == seq.raw_max ? 2.0 : 2.0 * v / seq.raw_max);
  return seq;
}

LdsSequence prime_gap_sequence(std::size_t count, SourceKind source) {
  const auto gaps = raw_gaps(count, source);
  const std::vector<double> raw(gaps.begin(), gaps.end());
  return normalize_gaps(raw, {source, 2});
}

LdsSequence load_sequence_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open LDS file " + path.string());
  std::vector<double> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos || line[begin] == '#') continue;
    const auto end = line.find_last_not_of(" \t\r") + 1;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data() + begin, line.data() + end, v);
    if (ec != std::errc{} || ptr != line.data() + end) {
      throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                  ": not a real number: '" + line + "'");
    }
    raw.push_back(v);
  }
  return normalize_gaps(raw, {SourceKind::external, 2});
}

LdsSequence make_sequence(const Source& source, std::size_t count) {
  switch (source.kind) {
    case SourceKind::prime_gaps:
    case SourceKind::twin_gaps: return prime_gap_sequence(count, source.kind);
    case SourceKind::van_der_corput: return van_der_corput_sequence(count, source.base);
    case SourceKind::external: break;
  }
  throw std::invalid_argument("make_sequence: external sequences are loaded from a file");
}

analytic::IntegralEstimate qmc_annex_weighted(double n, const LdsSequence& seq,
                                              double compensating_constant) {
  check_n(n);
  check_length(seq);
  analytic::IntegralEstimate est;
  est.n = n;
  est.method = analytic::IntegralMethod::qmc_lds;
  est.meta.samples = seq.points.size();
  if (n == 2.0) return est;
  const std::size_t L = seq.points.size();
  const long double step = (n - 2.0L) / L;
  const long double scale = static_cast<long double>(n) * compensating_constant / (L + 1);
  CompensatedSum<long double> sum;
  for (std::size_t j = 0; j < L; ++j) {
    const double x = static_cast<double>(2.0L + step * j);
    sum.add(scale * montecarlo::hl_integrand(x) * seq.points[j]);
  }
  est.value = static_cast<double>(sum.value());
  return est;
}

analytic::IntegralEstimate qmc_plain_average(double n, const LdsSequence& seq) {
  check_n(n);
  check_length(seq);
  analytic::IntegralEstimate est;
  est.n = n;
  est.method = analytic::IntegralMethod::qmc_lds;
  est.meta.samples = seq.points.size();
  if (n == 2.0) return est;
  const long double width = n - 2.0L;
  CompensatedSum<long double> sum;
  for (const double u : seq.points) {
    sum.add(montecarlo::hl_integrand(static_cast<double>(2.0L + width * u)));
  }
  est.value = static_cast<double>(width * sum.value() / seq.points.size());
  const double disc = star_discrepancy_upper(seq.points);
  // Koksma–Hlawka with V(f∘x) = f(2) − f(n) for the monotone integrand
  est.error_bound_or_stderr =
      static_cast<double>(width * disc * (montecarlo::hl_integrand(2.0) - montecarlo::hl_integrand(n)));
  return est;
}

analytic::IntegralEstimate qmc_integral(double n, const LdsSequence& seq, double compensating_constant) {
  if (seq.source.kind == SourceKind::van_der_corput) return qmc_plain_average(n, seq);
  return qmc_annex_weighted(n, seq, compensating_constant);
}

double star_discrepancy_upper(std::span<const double> points) {
  if (points.empty()) throw std::invalid_argument("star_discrepancy: empty point set");
  std::vector<double> sorted(points.begin(), points.end());
  for (const double x : sorted) {
    if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("star_discrepancy: point outside [0, 1)");
  }
  std::sort(sorted.begin(), sorted.end());
  const long double N = sorted.size();
  long double worst = 0.0L;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const long double x = sorted[i];
    worst = std::max({worst, (i + 1) / N - x, x - i / N});
  }
  return static_cast<double>(worst);
}

std::uint64_t most_common_gap(std::span<const std::uint64_t> gaps) {
  std::map<std::uint64_t, std::size_t> freq;
  for (const auto g : gaps) ++freq[g];
  std::uint64_t best = 0;
  std::size_t best_count = 0;
  for (const auto& [gap, count] : freq) {
    if (count > best_count) {
      best = gap;
      best_count = count;
    }
  }
  return best;
}

}  // namespace twinlab::lds

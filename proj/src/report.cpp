#include "twinlab/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "twinlab/analytic.hpp"

namespace twinlab::report {

namespace {

using nlohmann::json;

template <class Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw StageError(name, e.what(), true);
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::uint64_t parse_u64_field(const std::string& s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an unsigned integer: '" + s + "'");
  }
  return v;
}

double parse_real_field(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw std::invalid_argument("not a real: '" + s + "'");
  return v;
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + text + "' (expected csv or json)");
}

double rel_err_pct(std::uint64_t pi2, double value) {
  return 100.0 * std::fabs(static_cast<double>(pi2) - value) / static_cast<double>(pi2);
}

std::uint64_t parse_count(const std::string& raw) {
  const std::string text = trim(raw);
  auto pow10 = [&](std::uint64_t mantissa, std::uint64_t exp) {
    std::uint64_t v = mantissa;
    for (std::uint64_t i = 0; i < exp; ++i) {
      if (v > UINT64_MAX / 10) throw std::invalid_argument("count out of range: '" + text + "'");
      v *= 10;
    }
    return v;
  };
  for (const char* sep : {"e", "E", "^"}) {
    const auto pos = text.find(sep);
    if (pos == std::string::npos) continue;
    const std::string head = text.substr(0, pos), tail = text.substr(pos + 1);
    const std::uint64_t exp = parse_u64_field(tail);
    if (std::string(sep) == "^") {
      if (head != "10") throw std::invalid_argument("only powers of 10 are accepted: '" + text + "'");
      return pow10(1, exp);
    }
    return pow10(parse_u64_field(head), exp);
  }
  return parse_u64_field(text);
}

std::vector<std::uint64_t> parse_checkpoints(const std::string& text, std::uint64_t limit) {
  if (trim(text) == "decades") return sieve::decade_checkpoints(limit);
  std::vector<std::uint64_t> out;
  if (trim(text).empty()) return out;
  for (const auto& field : split(text, ',')) out.push_back(parse_count(field));
  return out;
}

ReportResult run_report(const ReportConfig& config) {
  ReportResult result;
  const auto& cps = config.checkpoints;
  if (cps.empty()) return result;

  result.census = stage("census", [&] {
    return sieve::census(config.limit, cps, {config.segment_size, config.threads});
  });
  const double two_c2 = stage("analytic", [] { return 2.0 * analytic::twin_prime_constant(1e-15); });
  const lds::LdsSequence sequence = stage("lds", [&] {
    return config.lds_file ? lds::load_sequence_file(*config.lds_file)
                           : lds::make_sequence(config.lds_source, config.mc_samples);
  });

  for (const auto& row : result.census.rows) {
    ComparisonRow c;
    c.n = row.n;
    c.pi2 = row.pi2;
    const double n = static_cast<double>(row.n);
    if (n >= 2.0) {
      c.hl_pred = stage("analytic", [&] { return analytic::hl_prediction(n); });
      c.mc_value = stage("montecarlo", [&] {
        return two_c2 * montecarlo::mc_integral({n, config.mc_samples, config.seed, config.mc_mode}).value;
      });
      c.lds_value = stage("lds", [&] {
        return two_c2 * lds::qmc_integral(n, sequence, config.compensating_constant).value;
      });
    }
    c.hl_rel_err_pct = rel_err_pct(c.pi2, c.hl_pred);
    c.mc_rel_err_pct = rel_err_pct(c.pi2, c.mc_value);
    c.lds_rel_err_pct = rel_err_pct(c.pi2, c.lds_value);
    result.rows.push_back(c);
  }
  return result;
}

std::string csv_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.5e", v);
  return buf;
}

double json_real(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9e", v);
  return std::strtod(buf, nullptr);
}

void write_comparison(std::ostream& out, const std::vector<ComparisonRow>& rows, Format format) {
  if (format == Format::csv) {
    out << kComparisonHeader << '\n';
    for (const auto& r : rows) {
      out << r.n << ',' << r.pi2 << ',' << csv_real(r.hl_pred) << ',' << csv_real(r.hl_rel_err_pct)
          << ',' << csv_real(r.mc_value) << ',' << csv_real(r.mc_rel_err_pct) << ','
          << csv_real(r.lds_value) << ',' << csv_real(r.lds_rel_err_pct) << '\n';
    }
    return;
  }
  json j = json::array();
  for (const auto& r : rows) {
    j.push_back({{"n", r.n},
                 {"pi2", r.pi2},
                 {"hl_pred", json_real(r.hl_pred)},
                 {"hl_err_pct", json_real(r.hl_rel_err_pct)},
                 {"mc", json_real(r.mc_value)},
                 {"mc_err_pct", json_real(r.mc_rel_err_pct)},
                 {"lds", json_real(r.lds_value)},
                 {"lds_err_pct", json_real(r.lds_rel_err_pct)}});
  }
  emit_json(out, j);
}

void write_census(std::ostream& out, const sieve::CensusTable& table, Format format) {
  if (format == Format::csv) {
    out << kCensusHeader << '\n';
    for (const auto& r : table.rows) {
      out << r.n << ',' << r.pi2 << ',' << r.c1 << ',' << r.c7 << ',' << r.c9 << ',' << r.exceptional
          << '\n';
    }
    return;
  }
  json j = json::array();
  for (const auto& r : table.rows) {
    j.push_back({{"n", r.n}, {"pi2", r.pi2}, {"c1", r.c1}, {"c7", r.c7}, {"c9", r.c9},
                 {"exceptional", r.exceptional}});
  }
  emit_json(out, j);
}

void write_proportions(std::ostream& out, const stats::ProportionSeries& series, Format format) {
  if (format == Format::csv) {
    out << kProportionHeader << '\n';
    for (const auto& r : series.rows) {
      out << r.n << ',' << csv_real(r.p1) << ',' << csv_real(r.p7) << ',' << csv_real(r.p9) << ','
          << csv_real(r.chi2.statistic) << ',' << csv_real(r.chi2.p_value) << '\n';
    }
    return;
  }
  json j = json::array();
  for (const auto& r : series.rows) {
    j.push_back({{"n", r.n},
                 {"p1", json_real(r.p1)},
                 {"p7", json_real(r.p7)},
                 {"p9", json_real(r.p9)},
                 {"chi2", json_real(r.chi2.statistic)},
                 {"p_value", json_real(r.chi2.p_value)}});
  }
  emit_json(out, j);
}

void write_brun(std::ostream& out, const std::vector<brun::BrunSum>& sums, Format format) {
  if (format == Format::csv) {
    out << kBrunHeader << '\n';
    for (const auto& s : sums) {
      out << s.limit << ',' << s.pair_count << ',' << s.last_q << ',' << csv_real(s.value) << '\n';
    }
    return;
  }
  json j = json::array();
  for (const auto& s : sums) {
    j.push_back({{"limit", s.limit}, {"r", s.pair_count}, {"last_q", s.last_q},
                 {"brun_sum", json_real(s.value)}});
  }
  emit_json(out, j);
}

void write_study(std::ostream& out, const montecarlo::ConvergenceTable& table, Format format) {
  const double slope = table.fitted_slope.value_or(std::nan(""));
  if (format == Format::csv) {
    out << kStudyHeader << '\n';
    for (const auto& r : table.rows) {
      out << r.samples << ',' << csv_real(r.mean_rel_err) << ',' << csv_real(slope) << '\n';
    }
    return;
  }
  json rows = json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"N", r.samples}, {"mean_rel_err", json_real(r.mean_rel_err)}});
  }
  json j = {{"rows", rows}};
  j["fitted_slope"] = table.fitted_slope ? json(json_real(*table.fitted_slope)) : json(nullptr);
  emit_json(out, j);
}

std::vector<ComparisonRow> read_comparison_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kComparisonHeader) {
    throw std::invalid_argument("comparison CSV: unexpected header");
  }
  std::vector<ComparisonRow> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    if (f.size() != 8) throw std::invalid_argument("comparison CSV: expected 8 fields in '" + line + "'");
    ComparisonRow r;
    r.n = parse_u64_field(f[0]);
    r.pi2 = parse_u64_field(f[1]);
    r.hl_pred = parse_real_field(f[2]);
    r.hl_rel_err_pct = parse_real_field(f[3]);
    r.mc_value = parse_real_field(f[4]);
    r.mc_rel_err_pct = parse_real_field(f[5]);
    r.lds_value = parse_real_field(f[6]);
    r.lds_rel_err_pct = parse_real_field(f[7]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace twinlab::report

// twinlab: command-line front end.
//
//   twinlab census  --limit 1e9
//   twinlab classes --limit 1e7 --checkpoints decades
//   twinlab integral --limit 1e12
//   twinlab mc --limit 1e6 --samples 1000000 --seed 7
//   twinlab mc --study --limit 1e6 --ladder 1e3,1e4,1e5,1e6,1e7 --seeds 32
//   twinlab qmc --limit 1e11 --lds prime-gaps --comp-const 7.39
//   twinlab brun --limit 1e8
//   twinlab report --limit 1e9 --format json --out table.json
//
// Exit codes: 0 success, 2 invalid arguments, 3 computation failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twinlab/analytic.hpp"
#include "twinlab/brun.hpp"
#include "twinlab/lds.hpp"
#include "twinlab/montecarlo.hpp"
#include "twinlab/report.hpp"
#include "twinlab/sieve.hpp"
#include "twinlab/stats.hpp"

namespace {

using namespace twinlab;
using nlohmann::json;

constexpr int kExitInvalid = 2;
constexpr int kExitFailure = 3;

struct InvalidArgs : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string limit = "1e6";
  std::string checkpoints = "decades";
  std::string samples = "17548";
  std::uint64_t seed = 1;
  std::string lds = "prime-gaps";
  std::string lds_file;
  double comp_const = lds::kCompensatingConstant;
  std::string format = "csv";
  std::string out = "stdout";
  std::string threads = "1";
  std::string mc_mode = "uniform";
  std::string segment = "4194304";
  // mc --study
  bool study = false;
  std::string ladder = "1e3,1e4,1e5,1e6,1e7";
  std::uint64_t seed_count = 32;
  // brun
  double bound_k = 4.5;
  // report side files
  std::string proportions_out;
  std::string brun_out;
};

void add_shared(CLI::App* cmd, Options& o) {
  cmd->add_option("--limit", o.limit, "Upper limit n (accepts 1e9, 10^9)")->capture_default_str();
  cmd->add_option("--checkpoints", o.checkpoints, "decades or comma list")->capture_default_str();
  cmd->add_option("--samples", o.samples, "Sample count N")->capture_default_str();
  cmd->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--lds", o.lds, "prime-gaps | twin-gaps | vdc:<base>")->capture_default_str();
  cmd->add_option("--lds-file", o.lds_file, "Sequence file, one real per line");
  cmd->add_option("--comp-const", o.comp_const, "Compensating constant")->capture_default_str();
  cmd->add_option("--format", o.format, "csv | json")->capture_default_str();
  cmd->add_option("--out", o.out, "Output path or stdout")->capture_default_str();
  cmd->add_option("--threads", o.threads, "Worker threads or auto")->capture_default_str();
  cmd->add_option("--mc-mode", o.mc_mode, "uniform | annex")->capture_default_str();
  cmd->add_option("--segment", o.segment, "Sieve segment width")->capture_default_str();
}

// Wraps argument conversion so that failures map to exit code 2.
template <class Fn>
auto arg(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw InvalidArgs(e.what());
  }
}

unsigned threads_of(const Options& o) {
  if (o.threads == "auto") return 0;
  return static_cast<unsigned>(arg([&] { return report::parse_count(o.threads); }));
}

montecarlo::McMode mc_mode_of(const Options& o) {
  if (o.mc_mode == "uniform") return montecarlo::McMode::uniform;
  if (o.mc_mode == "annex") return montecarlo::McMode::annex_stratified;
  throw InvalidArgs("unknown --mc-mode '" + o.mc_mode + "' (expected uniform or annex)");
}

struct Parsed {
  std::uint64_t limit;
  std::vector<std::uint64_t> checkpoints;
  std::uint64_t samples;
  report::Format format;
  unsigned threads;
  std::uint64_t segment;
};

Parsed parse(const Options& o) {
  Parsed p;
  p.limit = arg([&] { return report::parse_count(o.limit); });
  p.checkpoints = arg([&] { return report::parse_checkpoints(o.checkpoints, p.limit); });
  p.samples = arg([&] { return report::parse_count(o.samples); });
  p.format = arg([&] { return report::parse_format(o.format); });
  p.threads = threads_of(o);
  p.segment = arg([&] { return report::parse_count(o.segment); });
  if (p.samples == 0) throw InvalidArgs("--samples must be positive");
  if (p.segment < sieve::kMinSegmentSize) throw InvalidArgs("--segment must be >= 64");
  if (!std::is_sorted(p.checkpoints.begin(), p.checkpoints.end())) {
    throw InvalidArgs("--checkpoints must be ascending");
  }
  return p;
}

lds::LdsSequence sequence_of(const Options& o, std::size_t count) {
  if (!o.lds_file.empty()) return arg([&] { return lds::load_sequence_file(o.lds_file); });
  const lds::Source src = arg([&] { return lds::parse_source(o.lds); });
  return lds::make_sequence(src, count);
}

class Output {
 public:
  explicit Output(const std::string& target) {
    if (target != "stdout" && target != "-") {
      file_ = std::make_unique<std::ofstream>(target);
      if (!*file_) throw InvalidArgs("cannot open --out " + target);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

// Ad-hoc tables for subcommands without a library encoder.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;

  void write(std::ostream& out, report::Format format) const {
    if (format == report::Format::csv) {
      for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
      out << '\n';
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell(row[i]);
        out << '\n';
      }
      return;
    }
    json arr = json::array();
    for (const auto& row : rows) {
      json obj;
      for (std::size_t i = 0; i < row.size(); ++i) {
        obj[columns[i]] = row[i].is_number_float() ? json(report::json_real(row[i].get<double>())) : row[i];
      }
      arr.push_back(obj);
    }
    out << arr.dump(2) << '\n';
  }

  static std::string cell(const json& v) {
    if (v.is_number_float()) return report::csv_real(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  }
};

int cmd_census(const Options& o) {
  const Parsed p = parse(o);
  Output out(o.out);
  const auto table = sieve::census(p.limit, p.checkpoints, {p.segment, p.threads});
  report::write_census(out.stream(), table, p.format);
  return 0;
}

int cmd_classes(const Options& o) {
  const Parsed p = parse(o);
  Output out(o.out);
  const auto table = sieve::census(p.limit, p.checkpoints, {p.segment, p.threads});
  const auto series = stats::proportion_series(table);
  for (const auto n : series.skipped) std::cerr << "note: checkpoint " << n << " has no classed pairs; skipped\n";
  report::write_proportions(out.stream(), series, p.format);
  return 0;
}

int cmd_integral(const Options& o) {
  const Parsed p = parse(o);
  Output out(o.out);
  Table t{{"n", "quadrature", "li_identity", "rel_diff", "hl_pred", "ratio", "upper_bound", "bound_holds"}, {}};
  for (const auto n64 : p.checkpoints) {
    const double n = static_cast<double>(n64);
    if (n < 2.0) throw InvalidArgs("integral checkpoints must be >= 2");
    const auto quad = analytic::hl_integral(n, analytic::IntegralMethod::quadrature);
    const auto ident = analytic::hl_integral(n, analytic::IntegralMethod::li_identity);
    const double diff = ident.value == 0.0 ? 0.0 : std::fabs(quad.value - ident.value) / ident.value;
    std::vector<json> row{n64, quad.value, ident.value, diff, analytic::hl_prediction(n)};
    if (n > std::exp(1.0)) {
      const auto b = analytic::ratio_bounds_check(n);
      row.insert(row.end(), {b.ratio, b.upper, b.holds});
    } else {
      row.insert(row.end(), {std::nan(""), std::nan(""), false});
    }
    t.rows.push_back(std::move(row));
  }
  t.write(out.stream(), p.format);
  return 0;
}

int cmd_mc(const Options& o) {
  const Parsed p = parse(o);
  const auto mode = mc_mode_of(o);
  Output out(o.out);
  if (o.study) {
    montecarlo::StudyConfig cfg;
    cfg.n = static_cast<double>(p.limit);
    cfg.sample_ladder = arg([&] { return report::parse_checkpoints(o.ladder, UINT64_MAX); });
    cfg.seeds = montecarlo::seed_range(o.seed_count, o.seed);
    cfg.mode = mode;
    cfg.threads = p.threads;
    const auto table = arg([&] { return montecarlo::convergence_study(cfg); });
    report::write_study(out.stream(), table, p.format);
    return 0;
  }
  const double two_c2 = 2.0 * analytic::twin_prime_constant();
  Table t{{"n", "samples", "seed", "mode", "estimate", "stderr", "hl_pred_mc", "rel_err"}, {}};
  for (const auto n64 : p.checkpoints) {
    const double n = static_cast<double>(n64);
    const auto est = arg([&] { return montecarlo::mc_integral({n, p.samples, o.seed, mode}); });
    const double exact = analytic::hl_integral(n).value;
    const double rel = exact == 0.0 ? 0.0 : std::fabs(est.value - exact) / exact;
    t.rows.push_back({n64, p.samples, o.seed, montecarlo::to_string(mode), est.value,
                      est.error_bound_or_stderr, two_c2 * est.value, rel});
  }
  t.write(out.stream(), p.format);
  return 0;
}

int cmd_qmc(const Options& o) {
  const Parsed p = parse(o);
  Output out(o.out);
  const auto seq = sequence_of(o, p.samples);
  const double two_c2 = 2.0 * analytic::twin_prime_constant();
  Table t{{"n", "points", "source", "estimate", "hl_pred_qmc", "rel_err"}, {}};
  for (const auto n64 : p.checkpoints) {
    const double n = static_cast<double>(n64);
    const auto est = arg([&] { return lds::qmc_integral(n, seq, o.comp_const); });
    const double exact = analytic::hl_integral(n).value;
    const double rel = exact == 0.0 ? 0.0 : std::fabs(est.value - exact) / exact;
    t.rows.push_back({n64, seq.points.size(), lds::to_string(seq.source), est.value, two_c2 * est.value, rel});
  }
  t.write(out.stream(), p.format);
  return 0;
}

int cmd_brun(const Options& o) {
  const Parsed p = parse(o);
  Output out(o.out);
  report::write_brun(out.stream(), brun::brun_series(p.checkpoints), p.format);
  const auto scan = arg([&] { return brun::comparison_bound_check(p.limit, o.bound_k); });
  std::cerr << "comparison bounds with K = " << o.bound_k << ": " << scan.pairs_checked << " pairs, "
            << scan.violations.size() << " violations; max r/(q/ln^2 q) = " << scan.max_count_ratio
            << " at q = " << scan.max_count_ratio_q << '\n';
  return 0;
}

int cmd_report(const Options& o) {
  const Parsed p = parse(o);
  report::ReportConfig cfg;
  cfg.limit = p.limit;
  cfg.checkpoints = p.checkpoints;
  cfg.mc_samples = p.samples;
  cfg.seed = o.seed;
  cfg.mc_mode = mc_mode_of(o);
  cfg.lds_source = arg([&] { return lds::parse_source(o.lds); });
  if (!o.lds_file.empty()) cfg.lds_file = o.lds_file;
  cfg.compensating_constant = o.comp_const;
  cfg.segment_size = p.segment;
  cfg.threads = p.threads;
  Output out(o.out);
  const auto result = report::run_report(cfg);
  report::write_comparison(out.stream(), result.rows, p.format);
  if (!o.proportions_out.empty()) {
    Output side(o.proportions_out);
    report::write_proportions(side.stream(), stats::proportion_series(result.census), p.format);
  }
  if (!o.brun_out.empty()) {
    Output side(o.brun_out);
    report::write_brun(side.stream(), brun::brun_series(p.checkpoints), p.format);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twin-prime census and Hardy-Littlewood integral laboratory"};
  app.require_subcommand(1);
  Options o;

  struct Cmd {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Cmd cmds[] = {
      {"census", "Twin-pair counts and mod-10 classes per checkpoint", cmd_census},
      {"classes", "Class proportions and chi-square uniformity per checkpoint", cmd_classes},
      {"integral", "Hardy-Littlewood integral by quadrature and li identity", cmd_integral},
      {"mc", "Monte Carlo estimates or convergence study", cmd_mc},
      {"qmc", "Quasi-Monte Carlo estimates from a low-discrepancy sequence", cmd_qmc},
      {"brun", "Partial sums of twin-prime reciprocals", cmd_brun},
      {"report", "Comparison table: census, prediction, MC, LDS", cmd_report},
  };
  std::vector<std::pair<CLI::App*, const Cmd*>> subs;
  for (const auto& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_shared(sub, o);
    if (std::string(c.name) == "mc") {
      sub->add_flag("--study", o.study, "Run a convergence study over --ladder");
      sub->add_option("--ladder", o.ladder, "Sample ladder for --study")->capture_default_str();
      sub->add_option("--seeds", o.seed_count, "Number of seeds for --study")->capture_default_str();
    }
    if (std::string(c.name) == "brun") {
      sub->add_option("--bound-k", o.bound_k, "K for the comparison-bound scan")->capture_default_str();
    }
    if (std::string(c.name) == "report") {
      sub->add_option("--proportions-out", o.proportions_out, "Also write the class-proportion series here");
      sub->add_option("--brun-out", o.brun_out, "Also write Brun partial sums here");
    }
    subs.emplace_back(sub, &c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalid;
  }

  for (const auto& [sub, cmd] : subs) {
    if (!sub->parsed()) continue;
    try {
      return cmd->run(o);
    } catch (const InvalidArgs& e) {
      std::cerr << "twinlab " << cmd->name << ": invalid argument: " << e.what() << '\n';
      return kExitInvalid;
    } catch (const report::StageError& e) {
      std::cerr << "twinlab " << cmd->name << ": stage " << e.stage() << " failed: " << e.what() << '\n';
      return e.invalid_input() ? kExitInvalid : kExitFailure;
    } catch (const std::invalid_argument& e) {
      std::cerr << "twinlab " << cmd->name << ": invalid argument: " << e.what() << '\n';
      return kExitInvalid;
    } catch (const std::exception& e) {
      std::cerr << "twinlab " << cmd->name << ": " << e.what() << '\n';
      return kExitFailure;
    }
  }
  return kExitInvalid;
}

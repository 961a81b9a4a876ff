#include "twinlab/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "twinlab/summation.hpp"

namespace twinlab::montecarlo {

namespace {

// Running mean / sum of squared deviations, merged pairwise (Chan et al.).
struct Moments {
  std::uint64_t count = 0;
  long double mean = 0.0L;
  long double m2 = 0.0L;

  void add(long double x) {
    ++count;
    const long double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }
  void merge(const Moments& o) {
    if (o.count == 0) return;
    const std::uint64_t total = count + o.count;
    const long double d = o.mean - mean;
    mean += d * o.count / total;
    m2 += o.m2 + d * d * count / total * o.count;
    count = total;
  }
};

void validate(const McConfig& c) {
  if (!(c.n >= 2.0)) throw std::invalid_argument("mc_integral: n must be >= 2");
  if (c.samples == 0) throw std::invalid_argument("mc_integral: samples must be >= 1");
}

analytic::IntegralEstimate uniform_estimate(const McConfig& c, const Integrand& f) {
  const CounterRng rng(c.seed);
  const long double width = c.n - 2.0L;
  Moments total;
  for (std::uint64_t start = 0; start < c.samples; start += kBlockSize) {
    const std::uint64_t stop = std::min(c.samples, start + kBlockSize);
    Moments block;
    for (std::uint64_t i = start; i < stop; ++i) {
      const double x = static_cast<double>(2.0L + width * rng.uniform(i));
      block.add(f(x));
    }
    total.merge(block);
  }
  analytic::IntegralEstimate est;
  est.value = static_cast<double>(width * total.mean);
  if (c.samples > 1) {
    const long double var = total.m2 / (c.samples - 1);
    est.error_bound_or_stderr = static_cast<double>(width * std::sqrt(var / c.samples));
  }
  return est;
}

analytic::IntegralEstimate annex_estimate(const McConfig& c, const Integrand& f) {
  analytic::IntegralEstimate est;
  const std::uint64_t nodes = c.samples;
  if (nodes < 2) return est;
  const CounterRng rng(c.seed);
  const long double step = (c.n - 2.0L) / (nodes - 1);
  CompensatedSum<long double> sum;
  CompensatedSum<long double> var;
  // nodes j = 0 .. N−1, terms j = 0 .. N−2, divided by N
  for (std::uint64_t j = 0; j + 1 < nodes; ++j) {
    const double x = static_cast<double>(2.0L + step * j);
    const long double weight = c.n * static_cast<long double>(f(x)) / nodes;
    sum.add(weight * rng.uniform(j));
    var.add(weight * weight / 12.0L);
  }
  est.value = static_cast<double>(sum.value());
  est.error_bound_or_stderr = static_cast<double>(std::sqrt(var.value()));
  return est;
}

}  // namespace

const char* to_string(McMode m) noexcept {
  switch (m) {
    case McMode::uniform: return "uniform";
    case McMode::annex_stratified: return "annex_stratified";
  }
  return "?";
}

double hl_integrand(double x) {
  const double l = std::log(x);
  return 1.0 / (l * l);
}

analytic::IntegralEstimate mc_integral(const McConfig& config) {
  return mc_integral(config, hl_integrand);
}

analytic::IntegralEstimate mc_integral(const McConfig& config, const Integrand& f) {
  validate(config);
  analytic::IntegralEstimate est;
  if (config.n > 2.0) {
    est = config.mode == McMode::uniform ? uniform_estimate(config, f) : annex_estimate(config, f);
  }
  est.n = config.n;
  est.method = analytic::IntegralMethod::monte_carlo;
  est.meta.samples = config.samples;
  est.meta.seed = config.seed;
  return est;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("log_log_slope: need at least two matching points");
  }
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const long double m = x.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const long double lx = std::log(static_cast<long double>(x[i]));
    const long double ly = std::log(static_cast<long double>(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return static_cast<double>((m * sxy - sx * sy) / (m * sxx - sx * sx));
}

std::vector<std::uint64_t> seed_range(std::uint64_t count, std::uint64_t first) {
  std::vector<std::uint64_t> seeds(count);
  for (std::uint64_t i = 0; i < count; ++i) seeds[i] = first + i;
  return seeds;
}

ConvergenceTable convergence_study(const StudyConfig& config) {
  const double exact = analytic::hl_integral(config.n).value;
  return convergence_study(config, hl_integrand, exact);
}

ConvergenceTable convergence_study(const StudyConfig& config, const Integrand& f, double exact) {
  const auto& ladder = config.sample_ladder;
  if (ladder.size() < 2) throw std::invalid_argument("convergence_study: need >= 2 ladder entries");
  if (!std::is_sorted(ladder.begin(), ladder.end()) || ladder.front() == 0) {
    throw std::invalid_argument("convergence_study: ladder must be ascending and positive");
  }
  if (config.seeds.empty()) throw std::invalid_argument("convergence_study: no seeds");
  if (!(config.n > 2.0) || exact == 0.0) {
    throw std::invalid_argument("convergence_study: n must exceed 2");
  }

  const std::size_t S = config.seeds.size();
  const std::size_t tasks = ladder.size() * S;
  std::vector<double> rel(tasks);
  auto run = [&](std::size_t t) {
    const McConfig mc{config.n, ladder[t / S], config.seeds[t % S], config.mode};
    rel[t] = std::fabs(mc_integral(mc, f).value - exact) / std::fabs(exact);
  };

  unsigned threads = config.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : config.threads;
  if (threads <= 1) {
    for (std::size_t t = 0; t < tasks; ++t) run(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) {
      pool.emplace_back([&] {
        for (std::size_t t; (t = next.fetch_add(1)) < tasks;) run(t);
      });
    }
  }

  ConvergenceTable table;
  std::vector<double> xs, ys;
  bool any_zero = false;
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    CompensatedSum<long double> acc;
    for (std::size_t s = 0; s < S; ++s) acc.add(rel[k * S + s]);
    const double mean = static_cast<double>(acc.value() / S);
    table.rows.push_back({ladder[k], mean});
    xs.push_back(static_cast<double>(ladder[k]));
    ys.push_back(mean);
    any_zero = any_zero || mean == 0.0;
  }
  if (!any_zero) table.fitted_slope = log_log_slope(xs, ys);
  return table;
}

}  // namespace twinlab::montecarlo

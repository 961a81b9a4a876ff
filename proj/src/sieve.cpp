#include "twinlab/sieve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace twinlab::sieve {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

const char* to_string(TwinClass c) noexcept {
  switch (c) {
    case TwinClass::C1: return "C1";
    case TwinClass::C7: return "C7";
    case TwinClass::C9: return "C9";
    case TwinClass::Exceptional: return "Exceptional";
  }
  return "?";
}

namespace detail {

void check_segment_size(std::uint64_t segment_size) {
  if (segment_size < kMinSegmentSize) {
    throw std::invalid_argument("segment_size must be >= " +
                                std::to_string(kMinSegmentSize) + ", got " +
                                std::to_string(segment_size));
  }
}

}  // namespace detail

std::vector<std::uint32_t> small_odd_primes(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 3) return primes;
  // composite[i] describes 2i + 1
  std::vector<std::uint8_t> composite(limit / 2 + 1, 0);
  for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    for (std::uint64_t j = p * p / 2; j < composite.size(); j += p) composite[j] = 1;
  }
  for (std::uint64_t i = 1; 2 * i + 1 <= limit; ++i) {
    if (!composite[i]) primes.push_back(static_cast<std::uint32_t>(2 * i + 1));
  }
  return primes;
}

SegmentedSieve::SegmentedSieve(std::uint64_t begin, std::uint64_t end,
                               std::uint64_t segment_size)
    : begin_(begin | 1u), end_(end) {
  detail::check_segment_size(segment_size);
  const std::uint64_t width = (segment_size + 127) / 128 * 128;
  window_bits_ = width / 2;
  next_low_ = begin_;
  if (end_ > begin_) {
    const std::uint64_t root = isqrt(end_ - 1);
    base_primes_ = small_odd_primes(static_cast<std::uint32_t>(root));
  }
  words_.resize(window_bits_ / 64);
}

bool SegmentedSieve::next() {
  if (next_low_ >= end_) return false;
  low_ = next_low_;
  // odd numbers in [low_, end_)
  const std::uint64_t remaining = (end_ - low_ + 1) / 2;
  bits_ = std::min(window_bits_, remaining);
  next_low_ = low_ + 2 * bits_;
  sieve_window();
  return true;
}

void SegmentedSieve::sieve_window() {
  const std::size_t nwords = static_cast<std::size_t>((bits_ + 63) / 64);
  std::fill(words_.begin(), words_.begin() + nwords, ~std::uint64_t{0});
  if (bits_ % 64 != 0) words_[nwords - 1] = (std::uint64_t{1} << (bits_ % 64)) - 1;
  for (std::size_t w = nwords; w < words_.size(); ++w) words_[w] = 0;

  const std::uint64_t high = low_ + 2 * (bits_ - 1);  // last odd in window
  if (low_ == 1) words_[0] &= ~std::uint64_t{1};

  std::uint64_t* const bits = words_.data();
  for (const std::uint32_t p32 : base_primes_) {
    const std::uint64_t p = p32;
    if (p * p > high) break;
    std::uint64_t start = p * p;
    if (start < low_) {
      start = (low_ + p - 1) / p * p;
      if ((start & 1u) == 0) start += p;
    }
    for (std::uint64_t i = (start - low_) / 2; i < bits_; i += p) {
      bits[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
  }
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t limit, std::uint64_t segment_size) {
  std::vector<std::uint64_t> primes;
  for_each_prime(limit, [&](std::uint64_t p) { primes.push_back(p); }, segment_size);
  return primes;
}

std::vector<TwinPair> enumerate_twin_pairs(std::uint64_t limit, std::uint64_t segment_size) {
  std::vector<TwinPair> pairs;
  for_each_twin_pair(0, limit, [&](const TwinPair& t) { pairs.push_back(t); }, segment_size);
  return pairs;
}

std::vector<std::uint64_t> decade_checkpoints(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 10; n <= limit; n *= 10) {
    out.push_back(n);
    if (n > UINT64_MAX / 10) break;
  }
  return out;
}

namespace {

// Counts per checkpoint bin: bin j holds pairs with checkpoint[j-1] < p+2 <= checkpoint[j].
using BinCounts = std::vector<std::array<std::uint64_t, 4>>;

void tally_range(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint64_t> checkpoints,
                 std::uint64_t segment_size, BinCounts& bins) {
  // pairs with lo <= p < hi
  if (hi <= lo) return;
  std::size_t bin = 0;
  for_each_twin_pair(lo, hi + 1, [&](const TwinPair& t) {
    const std::uint64_t top = t.upper();
    while (bin < checkpoints.size() && checkpoints[bin] < top) ++bin;
    if (bin == checkpoints.size()) return;
    ++bins[bin][static_cast<std::size_t>(t.class_label)];
  }, segment_size);
}

}  // namespace

CensusTable census(std::uint64_t limit, std::span<const std::uint64_t> checkpoints,
                   const CensusOptions& options) {
  detail::check_segment_size(options.segment_size);
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw std::invalid_argument("census checkpoints must be in ascending order");
  }
  if (!checkpoints.empty() && checkpoints.back() > limit) {
    throw std::invalid_argument("census checkpoint " + std::to_string(checkpoints.back()) +
                                " exceeds limit " + std::to_string(limit));
  }
  CensusTable table;
  if (checkpoints.empty()) return table;

  const std::uint64_t top = checkpoints.back();
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;
  // Chunks of at least a few segments; small ranges stay single-threaded.
  const std::uint64_t min_chunk = 8 * options.segment_size;
  if (top / min_chunk < threads) threads = static_cast<unsigned>(std::max<std::uint64_t>(1, top / min_chunk));

  std::vector<BinCounts> partial(threads, BinCounts(checkpoints.size(), {0, 0, 0, 0}));
  const std::uint64_t chunk = (top + 1 + threads - 1) / threads;
  auto work = [&](unsigned t) {
    const std::uint64_t lo = std::min<std::uint64_t>(top + 1, t * chunk);
    const std::uint64_t hi = std::min<std::uint64_t>(top + 1, lo + chunk);
    tally_range(lo, hi, checkpoints, options.segment_size, partial[t]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  std::array<std::uint64_t, 4> running{0, 0, 0, 0};
  table.rows.reserve(checkpoints.size());
  for (std::size_t j = 0; j < checkpoints.size(); ++j) {
    for (const auto& part : partial) {
      for (std::size_t c = 0; c < 4; ++c) running[c] += part[j][c];
    }
    CensusRow row;
    row.n = checkpoints[j];
    row.c1 = running[0];
    row.c7 = running[1];
    row.c9 = running[2];
    row.exceptional = running[3];
    row.pi2 = row.c1 + row.c7 + row.c9 + row.exceptional;
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace twinlab::sieve

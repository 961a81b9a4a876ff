// Segmented odd-only sieve of Eratosthenes, twin-pair enumeration and
// mod-10 class censuses.
//
// Bit layout inside a segment: bit i of the window starting at odd `low`
// stands for the odd number low + 2*i. The number 2 is never stored and is
// reported separately by the prime iterators.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace twinlab::sieve {

inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 22;
inline constexpr std::uint64_t kMinSegmentSize = 64;

enum class TwinClass : std::uint8_t { C1, C7, C9, Exceptional };

/// Class of the pair (p, p+2) keyed on the last decimal digit of p.
/// Only meaningful when p is the smaller member of a twin pair.
constexpr TwinClass classify(std::uint64_t p) noexcept {
  switch (p % 10) {
    case 1: return TwinClass::C1;
    case 7: return TwinClass::C7;
    case 9: return TwinClass::C9;
    default: return TwinClass::Exceptional;  // p = 3 or p = 5
  }
}

const char* to_string(TwinClass c) noexcept;

struct TwinPair {
  std::uint64_t p = 0;
  TwinClass class_label = TwinClass::Exceptional;

  constexpr std::uint64_t upper() const noexcept { return p + 2; }
  friend constexpr bool operator==(const TwinPair&, const TwinPair&) = default;
};

/// One window of the segmented sieve. Owns its bit words; `words()` is valid
/// until the next call to `SegmentedSieve::next()`.
class SegmentedSieve {
 public:
  /// Sieves odd numbers in [begin, end). `segment_size` is the width of a
  /// window in integers and is rounded up to a multiple of 128.
  SegmentedSieve(std::uint64_t begin, std::uint64_t end,
                 std::uint64_t segment_size = kDefaultSegmentSize);

  /// Advances to the next window. Returns false once [begin, end) is covered.
  bool next();

  /// Odd number represented by bit 0 of the current window.
  std::uint64_t low() const noexcept { return low_; }
  /// Number of valid bits in the current window.
  std::uint64_t bit_count() const noexcept { return bits_; }
  std::span<const std::uint64_t> words() const noexcept {
    return {words_.data(), static_cast<std::size_t>((bits_ + 63) / 64)};
  }

 private:
  void sieve_window();

  std::uint64_t begin_;
  std::uint64_t end_;
  std::uint64_t window_bits_;
  std::uint64_t low_ = 0;
  std::uint64_t next_low_;
  std::uint64_t bits_ = 0;
  std::vector<std::uint32_t> base_primes_;
  std::vector<std::uint64_t> words_;
};

/// Odd primes up to and including `limit` via a plain (unsegmented) sieve.
/// Used for base primes; `limit` is expected to be small.
std::vector<std::uint32_t> small_odd_primes(std::uint32_t limit);

/// Calls fn(p) for every prime p <= limit in increasing order.
template <class Fn>
void for_each_prime(std::uint64_t limit, Fn&& fn,
                    std::uint64_t segment_size = kDefaultSegmentSize);

/// Every prime <= limit, ascending. limit < 2 gives an empty vector.
/// Throws std::invalid_argument if segment_size < 64.
std::vector<std::uint64_t> sieve_primes(std::uint64_t limit,
                                        std::uint64_t segment_size = kDefaultSegmentSize);

/// Calls fn(TwinPair) for every twin pair with begin <= p and p + 2 <= last,
/// in increasing p.
template <class Fn>
void for_each_twin_pair(std::uint64_t begin, std::uint64_t last, Fn&& fn,
                        std::uint64_t segment_size = kDefaultSegmentSize);

template <class Fn>
void for_each_twin_pair(std::uint64_t limit, Fn&& fn) {
  for_each_twin_pair(0, limit, std::forward<Fn>(fn));
}

/// All twin pairs with p + 2 <= limit.
std::vector<TwinPair> enumerate_twin_pairs(std::uint64_t limit,
                                           std::uint64_t segment_size = kDefaultSegmentSize);

struct CensusRow {
  std::uint64_t n = 0;
  std::uint64_t pi2 = 0;
  std::uint64_t c1 = 0;
  std::uint64_t c7 = 0;
  std::uint64_t c9 = 0;
  std::uint64_t exceptional = 0;

  friend bool operator==(const CensusRow&, const CensusRow&) = default;
};

struct CensusTable {
  std::vector<CensusRow> rows;

  friend bool operator==(const CensusTable&, const CensusTable&) = default;
};

struct CensusOptions {
  std::uint64_t segment_size = kDefaultSegmentSize;
  unsigned threads = 1;  // 0 = hardware concurrency
};

/// Twin-pair counts at each checkpoint, a pair counting at n iff p + 2 <= n.
/// Checkpoints must be nondecreasing and <= limit (std::invalid_argument).
CensusTable census(std::uint64_t limit, std::span<const std::uint64_t> checkpoints,
                   const CensusOptions& options = {});

/// 10, 100, ... up to and including the largest power of ten <= limit.
std::vector<std::uint64_t> decade_checkpoints(std::uint64_t limit);

// ---------------------------------------------------------------------------

namespace detail {

void check_segment_size(std::uint64_t segment_size);

template <class Fn>
void for_each_set_bit(std::uint64_t word, Fn&& fn) {
  while (word != 0) {
    fn(static_cast<unsigned>(__builtin_ctzll(word)));
    word &= word - 1;
  }
}

}  // namespace detail

template <class Fn>
void for_each_prime(std::uint64_t limit, Fn&& fn, std::uint64_t segment_size) {
  detail::check_segment_size(segment_size);
  if (limit < 2) return;
  fn(std::uint64_t{2});
  SegmentedSieve sieve(3, limit + 1, segment_size);
  while (sieve.next()) {
    const std::uint64_t low = sieve.low();
    const auto words = sieve.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
      detail::for_each_set_bit(words[w], [&](unsigned bit) {
        fn(low + 2 * (64 * w + bit));
      });
    }
  }
}

template <class Fn>
void for_each_twin_pair(std::uint64_t begin, std::uint64_t last, Fn&& fn,
                        std::uint64_t segment_size) {
  detail::check_segment_size(segment_size);
  if (last < 5 || begin > last - 2) return;
  const std::uint64_t lo = begin < 3 ? 3 : begin;
  // A pair is (p, p+2) with both in [lo, last]; a bit's partner lives in
  // the following bit, possibly in the next window.
  SegmentedSieve sieve(lo, last + 1, segment_size);
  bool carry_valid = false;
  std::uint64_t carry_p = 0;  // candidate p whose partner is bit 0 of next window
  while (sieve.next()) {
    const std::uint64_t low = sieve.low();
    const auto words = sieve.words();
    if (carry_valid && (words[0] & 1u)) fn(TwinPair{carry_p, classify(carry_p)});
    carry_valid = false;
    const std::size_t nw = words.size();
    for (std::size_t w = 0; w < nw; ++w) {
      const std::uint64_t cur = words[w];
      const std::uint64_t hi = (w + 1 < nw) ? (words[w + 1] << 63) : 0;
      const std::uint64_t twins = cur & ((cur >> 1) | hi);
      detail::for_each_set_bit(twins, [&](unsigned bit) {
        const std::uint64_t p = low + 2 * (64 * w + bit);
        fn(TwinPair{p, classify(p)});
      });
    }
    const std::uint64_t last_bit = sieve.bit_count() - 1;
    if ((words[last_bit / 64] >> (last_bit % 64)) & 1u) {
      carry_valid = true;
      carry_p = low + 2 * last_bit;
    }
  }
}

}  // namespace twinlab::sieve

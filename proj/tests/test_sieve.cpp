#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "twinlab/sieve.hpp"

using namespace twinlab::sieve;

TEST_CASE("sieve_primes small limits") {
  CHECK(sieve_primes(10) == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(sieve_primes(2) == std::vector<std::uint64_t>{2});
  CHECK(sieve_primes(1).empty());
  CHECK(sieve_primes(0).empty());
  CHECK(sieve_primes(3) == std::vector<std::uint64_t>{2, 3});
}

TEST_CASE("sieve_primes rejects tiny segments") {
  CHECK_THROWS_AS(sieve_primes(100, 0), std::invalid_argument);
  CHECK_THROWS_AS(sieve_primes(100, 63), std::invalid_argument);
  CHECK_NOTHROW(sieve_primes(100, 64));
}

TEST_CASE("sieve_primes matches trial division to 1e4 for many segment sizes") {
  const auto expected = oracle::primes_trial(10000);
  for (const std::uint64_t seg : {64ull, 128ull, 200ull, 1000ull, 4096ull, 1ull << 22}) {
    CAPTURE(seg);
    CHECK(sieve_primes(10000, seg) == expected);
  }
}

TEST_CASE("prime count to 1e6 agrees between plain and segmented sieves") {
  const auto plain = small_odd_primes(1000000);
  CHECK(plain.size() + 1 == 78498);
  for (const std::uint64_t seg : {64ull, 12345ull, 1ull << 16, 1ull << 22}) {
    const auto seg_primes = sieve_primes(1000000, seg);
    REQUIRE(seg_primes.size() == 78498);
    CHECK(std::equal(plain.begin(), plain.end(), seg_primes.begin() + 1));
  }
}

TEST_CASE("enumerate_twin_pairs examples") {
  const auto pairs = enumerate_twin_pairs(20);
  REQUIRE(pairs.size() == 4);
  CHECK(pairs[0] == TwinPair{3, TwinClass::Exceptional});
  CHECK(pairs[1] == TwinPair{5, TwinClass::Exceptional});
  CHECK(pairs[2] == TwinPair{11, TwinClass::C1});
  CHECK(pairs[3] == TwinPair{17, TwinClass::C7});

  std::vector<std::uint64_t> c1;
  for (const auto& t : enumerate_twin_pairs(80)) {
    if (t.class_label == TwinClass::C1) c1.push_back(t.p);
  }
  CHECK(c1 == std::vector<std::uint64_t>{11, 41, 71});

  std::vector<std::uint64_t> c9;
  for (const auto& t : enumerate_twin_pairs(160)) {
    if (t.class_label == TwinClass::C9) c9.push_back(t.p);
  }
  CHECK(c9 == std::vector<std::uint64_t>{29, 59, 149});

  std::vector<std::uint64_t> c7;
  for (const auto& t : enumerate_twin_pairs(140)) {
    if (t.class_label == TwinClass::C7) c7.push_back(t.p);
  }
  CHECK(c7 == std::vector<std::uint64_t>{17, 107, 137});
}

TEST_CASE("twin pair boundary: a pair counts only when p+2 <= limit") {
  CHECK(enumerate_twin_pairs(4).empty());
  CHECK(enumerate_twin_pairs(5).size() == 1);
  CHECK(enumerate_twin_pairs(6).size() == 1);
  CHECK(enumerate_twin_pairs(7).size() == 2);
  CHECK(enumerate_twin_pairs(12).size() == 2);
  CHECK(enumerate_twin_pairs(13).size() == 3);
}

TEST_CASE("twin pairs match trial division across segment boundaries") {
  const auto expected = oracle::twin_lowers_trial(20000);
  for (const std::uint64_t seg : {64ull, 128ull, 130ull, 1024ull, 1ull << 22}) {
    CAPTURE(seg);
    std::vector<std::uint64_t> got;
    for_each_twin_pair(0, 20000, [&](const TwinPair& t) { got.push_back(t.p); }, seg);
    CHECK(got == expected);
  }
}

TEST_CASE("twin pair invariants") {
  for (const auto& t : enumerate_twin_pairs(200000)) {
    REQUIRE(oracle::is_prime_trial(t.p));
    REQUIRE(oracle::is_prime_trial(t.p + 2));
    REQUIRE(t.class_label == classify(t.p));
    if (t.p >= 11) {
      const auto d = t.p % 10;
      REQUIRE((d == 1 || d == 7 || d == 9));
      REQUIRE(t.class_label != TwinClass::Exceptional);
    } else {
      REQUIRE((t.p == 3 || t.p == 5));
      REQUIRE(t.class_label == TwinClass::Exceptional);
    }
  }
}

TEST_CASE("for_each_twin_pair honours a lower bound") {
  std::vector<std::uint64_t> got;
  for_each_twin_pair(100, 200, [&](const TwinPair& t) { got.push_back(t.p); }, 64);
  CHECK(got == std::vector<std::uint64_t>{101, 107, 137, 149, 179, 191, 197});
}

TEST_CASE("census examples") {
  const std::vector<std::uint64_t> cps{7, 80};
  const auto t = census(100, cps);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0] == CensusRow{7, 2, 0, 0, 0, 2});
  CHECK(t.rows[1].c1 == 3);
  CHECK(t.rows[1].pi2 == 8);  // 3,5,11,17,29,41,59,71
}

TEST_CASE("census decade counts to 1e7") {
  const auto cps = decade_checkpoints(10000000);
  const auto t = census(10000000, cps);
  const std::vector<std::uint64_t> expected{2, 8, 35, 205, 1224, 8169, 58980};
  REQUIRE(t.rows.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(t.rows[i].pi2 == expected[i]);
}

TEST_CASE("census errors") {
  const std::vector<std::uint64_t> unsorted{100, 10};
  CHECK_THROWS_AS(census(1000, unsorted), std::invalid_argument);
  const std::vector<std::uint64_t> beyond{10, 2000};
  CHECK_THROWS_AS(census(1000, beyond), std::invalid_argument);
  const std::vector<std::uint64_t> ok{10};
  CHECK_THROWS_AS(census(1000, ok, {32, 1}), std::invalid_argument);
  CHECK(census(1000, std::vector<std::uint64_t>{}).rows.empty());
}

TEST_CASE("census equals brute force for random checkpoints up to 1e5") {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::uint64_t> pick(0, 100000);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::uint64_t> cps(12);
    for (auto& c : cps) c = pick(rng);
    std::sort(cps.begin(), cps.end());
    const auto t = census(100000, cps, {64 + 64 * static_cast<std::uint64_t>(trial), 1});
    for (const auto& row : t.rows) {
      const auto b = oracle::census_trial(row.n);
      CAPTURE(row.n);
      CHECK(row.pi2 == b.pi2);
      CHECK(row.c1 == b.by_digit[0]);
      CHECK(row.c7 == b.by_digit[1]);
      CHECK(row.c9 == b.by_digit[2]);
      CHECK(row.exceptional == b.by_digit[3]);
    }
  }
}

TEST_CASE("census partition, monotonicity and determinism") {
  std::vector<std::uint64_t> cps;
  for (std::uint64_t n = 0; n <= 3000000; n += 37813) cps.push_back(n);
  const auto reference = census(3000000, cps);
  CensusRow prev;
  for (const auto& row : reference.rows) {
    CHECK(row.pi2 == row.c1 + row.c7 + row.c9 + row.exceptional);
    if (row.n >= 7) CHECK(row.exceptional == 2);
    CHECK(row.pi2 >= prev.pi2);
    CHECK(row.c1 >= prev.c1);
    CHECK(row.c7 >= prev.c7);
    CHECK(row.c9 >= prev.c9);
    prev = row;
  }
  for (const unsigned threads : {1u, 2u, 3u, 7u}) {
    for (const std::uint64_t seg : {64ull, 1000ull, 1ull << 16}) {
      CAPTURE(threads);
      CAPTURE(seg);
      CHECK(census(3000000, cps, {seg, threads}) == reference);
    }
  }
}

TEST_CASE("decade checkpoints") {
  CHECK(decade_checkpoints(9).empty());
  CHECK(decade_checkpoints(10) == std::vector<std::uint64_t>{10});
  CHECK(decade_checkpoints(999) == std::vector<std::uint64_t>{10, 100});
  CHECK(decade_checkpoints(UINT64_MAX).size() == 19);
}

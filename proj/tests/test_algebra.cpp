#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "heffter/algebra.hpp"

using namespace heffter;

TEST_CASE("canonicalize reduces into the symmetric range") {
  CHECK(canonicalize(26, 25) == 1);
  CHECK(canonicalize(13, 25) == -12);
  CHECK(canonicalize(-25, 25) == 0);
  CHECK(canonicalize(12, 25) == 12);
  CHECK(canonicalize(-12, 25) == -12);
  CHECK(canonicalize(0, 3) == 0);
  CHECK(canonicalize(2, 3) == -1);
}

TEST_CASE("canonicalize rejects bad moduli") {
  CHECK_THROWS_AS(canonicalize(1, 4), modulus_error);
  CHECK_THROWS_AS(canonicalize(1, 1), modulus_error);
  CHECK_THROWS_AS(canonicalize(1, -7), modulus_error);
}

TEST_CASE("canonicalize is idempotent and additive") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> vals(-2000, 2000);
  for (int trial = 0; trial < 500; ++trial) {
    int modulus = 2 * (rng() % 60) + 3;
    int a = vals(rng), b = vals(rng);
    CHECK(canonicalize(canonicalize(a, modulus), modulus) == canonicalize(a, modulus));
    CHECK(canonicalize(a + b, modulus) ==
          canonicalize((long long)canonicalize(a, modulus) + canonicalize(b, modulus), modulus));
  }
}

TEST_CASE("ring elements refuse mixed moduli") {
  RingElement a(3, 7), b(3, 11);
  CHECK_THROWS_AS(a + b, modulus_error);
  CHECK(RingElement(5, 7) + RingElement(5, 7) == RingElement(3, 7));
  CHECK((-RingElement(3, 7)).value() == -3);
}

TEST_CASE("half-set recognition") {
  CHECK(is_half_set({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}, 25));
  CHECK(is_half_set({1, -2, -10, 11, -8, 6, -3, 5, 7, -4, -12, 9}, 25));
  CHECK_FALSE(is_half_set({1, 24, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, 25));  // 24 = -1
  CHECK_FALSE(is_half_set({1, 2, 3}, 25));
  CHECK_FALSE(is_half_set({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, 25));
  CHECK_FALSE(is_half_set({1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, 25));
  for (int modulus : {3, 5, 7, 25, 41, 97}) {
    std::vector<int> positives;
    for (int i = 1; i <= (modulus - 1) / 2; ++i) positives.push_back(i);
    CHECK(is_half_set(positives, modulus));
  }
}

TEST_CASE("half-set type validates on construction") {
  CHECK_THROWS_AS(HalfSet({1, 2}, 25), domain_error);
  HalfSet half = HalfSet::positives(25);
  CHECK(half.size() == 12);
  CHECK(half.contains(1));
  CHECK(half.contains(26));
  CHECK_FALSE(half.contains(-1));
}

TEST_CASE("support of a multiset") {
  CHECK(support({1, -2, -10, 11}) == std::set<int>{1, 2, 10, 11});
  CHECK(support({}) == std::set<int>{});
  CHECK(support({-3, 3}) == std::set<int>{3});
}

TEST_CASE("support is invariant under negation") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> values, negated;
    for (int i = 0; i < 10; ++i) {
      int v = static_cast<int>(rng() % 99) - 49;
      values.push_back(v);
      negated.push_back(-v);
    }
    CHECK(support(values) == support(negated));
  }
}

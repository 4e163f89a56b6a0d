#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "heffter/orderings.hpp"

using namespace heffter;

TEST_CASE("partial sums") {
  CHECK(partial_sums({1, -2, -10, 11}, 25) == std::vector<int>{1, -1, -11, 0});
  CHECK(partial_sums({7}, 25) == std::vector<int>{7});
  CHECK(partial_sums({1, 2, -3, 4, 5, -9}, 25) == std::vector<int>{1, 3, 0, 4, 9, 0});
}

TEST_CASE("simplicity is distinctness of partial sums") {
  CHECK(is_simple({1, -2, -10, 11}, 25));
  CHECK_FALSE(is_simple({1, 2, -3, 4, 5, -9}, 25));
}

TEST_CASE("every zero-sum 3-set with distinct entries is simple") {
  const int modulus = 25;
  for (int a = -12; a <= 12; ++a) {
    for (int b = -12; b <= 12; ++b) {
      int c = canonicalize(-(a + b), modulus);
      std::set<int> part{a, b, c};
      if (a == 0 || b == 0 || c == 0 || part.size() != 3) continue;
      bool has_pair = part.count(-a) || part.count(-b) || part.count(-c);
      if (has_pair) continue;
      CHECK(is_simple({a, b, c}, modulus));
    }
  }
}

TEST_CASE("simplicity is invariant under rotation and reverse-negation") {
  std::mt19937 rng(3);
  auto h = fixtures::fig1();
  auto rows = row_system(h);
  std::vector<std::vector<int>> cases = rows.parts;
  cases.push_back({1, 2, -3, 4, 5, -9});
  for (auto seq : cases) {
    for (int trial = 0; trial < 10; ++trial) {
      std::shuffle(seq.begin(), seq.end(), rng);
      bool base = is_simple(seq, 25);
      for (size_t r = 0; r < seq.size(); ++r) {
        std::vector<int> rot;
        for (size_t i = 0; i < seq.size(); ++i) rot.push_back(seq[(r + i) % seq.size()]);
        CHECK(is_simple(rot, 25) == base);
      }
      std::vector<int> revneg;
      for (auto it = seq.rbegin(); it != seq.rend(); ++it) revneg.push_back(-*it);
      CHECK(is_simple(revneg, 25) == base);
    }
  }
}

TEST_CASE("induced permutation lists the part cycles") {
  auto [rom, com] = fixtures::fig1_orderings();
  auto pr = induced_permutation(rom);
  CHECK(pr.apply(1) == -2);
  CHECK(pr.apply(11) == 1);
  CHECK(pr.apply(-4) == -12);
  auto cycles = pr.cycles();
  REQUIRE(cycles.size() == 3);

  auto pc = induced_permutation(com);
  CHECK(pc.apply(1) == -8);
  CHECK(pc.apply(7) == 1);
  CHECK(pc.cycles().size() == 4);

  SystemOrdering single{HeffterSystem{7, 3, {{1, 2, -3}}}, {{1, 2, -3}}};
  auto ps = induced_permutation(single);
  CHECK(ps.single_cycle());
  CHECK(ps.apply(-3) == 1);
}

TEST_CASE("the worked example's orderings are compatible") {
  auto [rom, com] = fixtures::fig1_orderings();
  CHECK(are_compatible(rom, com));
}

TEST_CASE("reversing one column part is decided by brute-force composition") {
  auto [rom, com] = fixtures::fig1_orderings();
  auto com2 = com;
  com2.sequences[3] = {11, 9, 5};
  // Oracle: walk the composed map directly.
  auto composed = induced_permutation(rom).compose(induced_permutation(com2));
  bool expected = composed.cycles().size() == 1;
  CHECK(are_compatible(rom, com2) == expected);
}

TEST_CASE("compatibility requires the same half-set") {
  auto [rom, com] = fixtures::fig1_orderings();
  SystemOrdering other{HeffterSystem{7, 3, {{1, 2, -3}}}, {{1, 2, -3}}};
  CHECK_THROWS_AS(are_compatible(rom, other), domain_error);
}

TEST_CASE("compatibility is invariant under relabeling parts") {
  auto [rom, com] = fixtures::fig1_orderings();
  auto rom2 = rom;
  std::swap(rom2.system.parts[0], rom2.system.parts[2]);
  std::swap(rom2.sequences[0], rom2.sequences[2]);
  CHECK(are_compatible(rom2, com) == are_compatible(rom, com));
}

TEST_CASE("find_simple_ordering returns verified orderings") {
  auto found = find_simple_ordering({1, -2, -10, 11}, 25);
  REQUIRE(found);
  CHECK(is_simple(*found, 25));

  auto found6 = find_simple_ordering({1, 2, -3, 4, 5, -9}, 25);
  REQUIRE(found6);
  CHECK(is_simple(*found6, 25));

  auto found3 = find_simple_ordering({7, -4, -3}, 25);
  REQUIRE(found3);
  CHECK(is_simple(*found3, 25));
}

TEST_CASE("find_compatible_pair on the H(3,4)") {
  auto h = fixtures::fig1();
  auto pair = find_compatible_pair(h, SimplePolicy::kRequireSimple);
  REQUIRE(pair);
  CHECK(are_compatible(pair->row_ordering, pair->col_ordering));
  for (const auto& seq : pair->row_ordering.sequences) CHECK(is_simple(seq, h.modulus()));
  for (const auto& seq : pair->col_ordering.sequences) CHECK(is_simple(seq, h.modulus()));
}

TEST_CASE("block-diagonal arrays admit no compatible pair") {
  auto block = fixtures::blockdiag();
  REQUIRE(is_block_diagonal(block));
  CHECK_FALSE(find_compatible_pair(block).has_value());
}

TEST_CASE("H(5;4) admits no compatible pair: parity obstruction") {
  // The induced current graph has 10 vertices and 20 edges, so V = E mod 2
  // blocks monofaciality; the exhaustive search agrees.
  auto h = fixtures::fig3();
  CHECK_FALSE(find_compatible_pair(h, SimplePolicy::kPreferSimple).has_value());
}

TEST_CASE("alspach orderings") {
  auto single = alspach_check(25, {1});
  REQUIRE(single);
  CHECK(*single == std::vector<int>{1});

  auto three = alspach_check(25, {1, 2, -3});
  REQUIRE(three);
  CHECK(partial_sums(*three, 25) == std::vector<int>{-3, -2, 0});

  CHECK_THROWS_AS(alspach_check(25, {}), domain_error);
  CHECK_THROWS_AS(alspach_check(25, {0, 1}), domain_error);
  CHECK_THROWS_AS(alspach_check(25, {1, 26}), domain_error);
}

TEST_CASE("alspach output always has distinct partial sums") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    int modulus = 2 * (rng() % 12) + 3;
    std::vector<int> pool;
    for (int i = 1; i <= (modulus - 1) / 2; ++i) {
      pool.push_back(i);
      pool.push_back(-i);
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    size_t size = 1 + rng() % pool.size();
    std::vector<int> subset(pool.begin(), pool.begin() + size);
    auto ordering = alspach_check(modulus, subset);
    REQUIRE(ordering);
    auto sums = partial_sums(*ordering, modulus);
    std::set<int> distinct(sums.begin(), sums.end());
    CHECK(distinct.size() == sums.size());
  }
}

TEST_CASE("alspach sweeps") {
  auto r3 = alspach_sweep(3);
  CHECK(r3.subsets_checked == 3);
  CHECK(r3.failures.empty());

  auto r11 = alspach_sweep(11);
  CHECK(r11.subsets_checked == 1023);
  CHECK(r11.failures.empty());

  auto r11p = alspach_sweep(11, 4);
  CHECK(r11p.subsets_checked == 1023);
  CHECK(r11p.failures.empty());
}

TEST_CASE("ordering files round-trip") {
  auto [rom, com] = fixtures::fig1_orderings();
  std::string text = format_orderings(rom, com);
  CHECK(text == fixtures::slurp("fig1.ord"));
  auto parsed = parse_orderings(text);
  CHECK(parsed.row_sequences == rom.sequences);
  CHECK(parsed.col_sequences == com.sequences);
}

TEST_CASE("ordering file errors") {
  CHECK_THROWS_AS(parse_orderings("part 1: 1 2 3\n"), parse_error);
  CHECK_THROWS_AS(parse_orderings("row 1: 1 2\nrow 1: 3 4\n"), parse_error);
  CHECK_THROWS_AS(parse_orderings("row 2: 1 2\n"), parse_error);
}

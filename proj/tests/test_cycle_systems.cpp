#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "heffter/cycle_systems.hpp"
#include "heffter/search.hpp"

using namespace heffter;

TEST_CASE("developing the worked example") {
  auto [rom, com] = fixtures::fig1_orderings();

  auto dr = develop(rom);
  CHECK(dr.trail_count() == 75);
  for (const auto& base : dr.bases) CHECK(base.size() == 4);
  CHECK(verify_decomposition(dr));
  CHECK(is_cycle_system(dr));

  auto dc = develop(com);
  CHECK(dc.trail_count() == 100);
  for (const auto& base : dc.bases) CHECK(base.size() == 3);
  CHECK(verify_decomposition(dc));
  CHECK(is_cycle_system(dc));
}

TEST_CASE("a single triple develops into the triangles of K_7") {
  SystemOrdering om{HeffterSystem{7, 3, {{1, 2, -3}}}, {{1, 2, -3}}};
  auto d = develop(om);
  CHECK(d.trail_count() == 7);
  CHECK(verify_decomposition(d));
  CHECK(is_cycle_system(d));
  long long edges = 0;
  for (const auto& t : d.trails()) edges += static_cast<long long>(t.vertices().size());
  CHECK(edges == 21);
}

TEST_CASE("dropping a part breaks the decomposition") {
  auto [rom, com] = fixtures::fig1_orderings();
  auto dr = develop(rom);
  dr.bases.pop_back();
  CHECK_FALSE(verify_decomposition(dr));
}

TEST_CASE("a non-simple ordering develops into trails, not cycles") {
  auto found = find_heffter_system(25, 6);
  REQUIRE(found);
  SystemOrdering om{*found, found->parts};
  bool have_nonsimple = false;
  for (size_t p = 0; p < found->parts.size() && !have_nonsimple; ++p) {
    std::vector<int> part = found->parts[p];
    std::sort(part.begin(), part.end());
    do {
      if (!is_simple(part, 25)) {
        om.sequences[p] = part;
        have_nonsimple = true;
        break;
      }
    } while (std::next_permutation(part.begin(), part.end()));
  }
  REQUIRE(have_nonsimple);
  auto d = develop(om);
  CHECK(verify_decomposition(d));
  CHECK_FALSE(is_cycle_system(d));
}

TEST_CASE("develop requires a valid system") {
  SystemOrdering bad{HeffterSystem{25, 3, {{1, 2, 3}}}, {{1, 2, 3}}};
  CHECK_THROWS_AS(develop(bad), precondition_error);
}

TEST_CASE("difference half-set equivalence and edge conservation") {
  std::mt19937 rng(17);
  int checked = 0;
  for (auto [modulus, k] : std::vector<std::pair<int, int>>{{7, 3}, {13, 3}, {25, 4}, {25, 6},
                                                            {31, 3}, {31, 5}, {41, 4}}) {
    auto sys = find_heffter_system(modulus, k);
    REQUIRE(sys);
    for (int trial = 0; trial < 5; ++trial) {
      SystemOrdering om{*sys, sys->parts};
      for (auto& seq : om.sequences) std::shuffle(seq.begin(), seq.end(), rng);
      auto d = develop(om);
      CHECK(verify_decomposition(d) == base_differences_are_half_set(d));
      // Edge count conservation: trails * k = M * |L|.
      CHECK(static_cast<long long>(d.trail_count()) * k ==
            static_cast<long long>(modulus) * (modulus - 1) / 2);
      bool all_simple = true;
      for (const auto& seq : om.sequences) all_simple &= is_simple(seq, modulus);
      CHECK(is_cycle_system(d) == all_simple);
      ++checked;
    }
  }
  CHECK(checked >= 35);
}

TEST_CASE("trail dump format") {
  SystemOrdering om{HeffterSystem{7, 3, {{1, 2, -3}}}, {{1, 2, -3}}};
  auto text = format_decomposition(develop(om));
  CHECK(text.rfind("trail 1 0: 0 1 3\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 7);
}

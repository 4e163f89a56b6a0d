#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "heffter/arrays.hpp"

using namespace heffter;

TEST_CASE("figure fixtures validate") {
  CHECK(validate(fixtures::fig1()).verdict);
  CHECK(validate(fixtures::fig2()).verdict);
  CHECK(validate(fixtures::fig3()).verdict);
  CHECK(fixtures::fig1().modulus() == 25);
  CHECK(fixtures::fig2().modulus() == 97);
  CHECK(fixtures::fig3().modulus() == 41);
}

TEST_CASE("a broken entry is reported on every violated invariant") {
  auto h = fixtures::fig1();
  h.cell(0, 0) = 2;
  auto report = validate(h);
  CHECK_FALSE(report.verdict);
  CHECK(report.has("row-sum"));
  CHECK(report.has("half-set"));
  CHECK(report.has("col-sum"));
}

TEST_CASE("zero entries are illegal") {
  auto h = fixtures::fig1();
  h.cell(0, 0) = 25;  // 0 mod 25
  CHECK(validate(h).has("zero-entry"));
}

TEST_CASE("integer validation") {
  CHECK(validate_integer(fixtures::fig2()));
  // Column 3 of the H(3,4) sums to -25, zero only mod 25.
  CHECK_FALSE(validate_integer(fixtures::fig1()));
}

TEST_CASE("adding M to an entry preserves modular but breaks integer validity") {
  auto h = fixtures::fig2();
  REQUIRE(validate_integer(h));
  h.cell(0, 2) = *h.cell(0, 2) + h.modulus();
  CHECK(validate(h).verdict);
  CHECK_FALSE(validate_integer(h));
}

TEST_CASE("shiftable validation") {
  CHECK(validate_shiftable(fixtures::fig2()));
  CHECK_FALSE(validate_shiftable(fixtures::fig1()));  // t = 3 is odd
}

TEST_CASE("shift moves the support and keeps zero sums") {
  auto h = fixtures::fig2();
  auto same = shift(h, 0);
  for (int r = 0; r < h.rows(); ++r)
    for (int c = 0; c < h.cols(); ++c) CHECK(same[r][c] == h.cell(r, c));

  auto shifted = shift(h, 2);
  std::vector<int> row1;
  for (auto& cell : shifted[0])
    if (cell) row1.push_back(*cell);
  CHECK(row1 == std::vector<int>{-3, 4, 7, -8, -27, 28, 31, -32});

  std::vector<int> flat;
  for (int r = 0; r < h.rows(); ++r) {
    long long sum = 0;
    for (auto& cell : shifted[r])
      if (cell) {
        sum += *cell;
        flat.push_back(*cell);
      }
    CHECK(sum == 0);
  }
  for (int c = 0; c < h.cols(); ++c) {
    long long sum = 0;
    for (int r = 0; r < h.rows(); ++r)
      if (shifted[r][c]) sum += *shifted[r][c];
    CHECK(sum == 0);
  }
  auto sup = support(flat);
  CHECK(*sup.begin() == 3);
  CHECK(*sup.rbegin() == 50);
  CHECK(sup.size() == 48);
}

TEST_CASE("shift refuses non-shiftable arrays") {
  CHECK_THROWS_AS(shift(fixtures::fig1(), 1), precondition_error);
}

TEST_CASE("necessity conditions") {
  CHECK(check_integer_necessity(6, 12, 8, 4));
  CHECK(check_integer_necessity(3, 4, 4, 3));
  CHECK_FALSE(check_integer_necessity(5, 5, 1, 1));  // ms = 5 = 1 mod 4
  CHECK(check_shiftable_necessity(6, 12, 8, 4));
  CHECK_FALSE(check_shiftable_necessity(3, 4, 4, 3));
  CHECK(check_shiftable_necessity(4, 4, 4, 4));
}

TEST_CASE("block-diagonal detection") {
  CHECK_FALSE(is_block_diagonal(fixtures::fig1()));
  CHECK_FALSE(is_block_diagonal(fixtures::fig3()));
  auto block = fixtures::blockdiag();
  CHECK(validate(block).verdict);
  CHECK(is_block_diagonal(block));
}

TEST_CASE("transpose and negation preserve validity") {
  for (auto h : {fixtures::fig1(), fixtures::fig2(), fixtures::fig3()}) {
    auto tr = transpose(h);
    CHECK(tr.rows() == h.cols());
    CHECK(tr.row_fill() == h.col_fill());
    CHECK(validate(tr).verdict);
    CHECK(validate(negate(h)).verdict);
  }
}

TEST_CASE("weak array validation") {
  auto w = fixtures::fig5();
  REQUIRE(w.has_weak_cells());
  CHECK(validate_weak(w).verdict);
  CHECK(w.modulus() == 25);
}

TEST_CASE("weak array with a cell made plain breaks a column sum") {
  auto text = fixtures::slurp("fig5.ha");
  auto pos = text.find("10:-10");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 6, "10");
  auto w = parse_array(text);
  auto report = validate_weak(w);
  CHECK_FALSE(report.verdict);
  CHECK(report.has("col-sum"));
}

TEST_CASE("every Heffter array is weak") {
  for (auto h : {fixtures::fig1(), fixtures::fig2(), fixtures::fig3()}) {
    CHECK(validate_weak(as_weak(h)).verdict);
  }
}

TEST_CASE("malformed weak cells are rejected at parse time") {
  CHECK_THROWS_AS(parse_array("heffter 3 4 4 3\n1 -7 -6 12\n2 -4 10:-11 -8:8\n-3 -11:11 9:-9 5\n"),
                  parse_error);
  CHECK_THROWS_AS(
      WeakHeffterArray(1, 1, 1, 1, {WeakCell{3, 4}}),
      domain_error);
}

TEST_CASE("array files round-trip") {
  for (const char* name : {"fig1.ha", "fig2.ha", "fig3.ha", "fig5.ha", "blockdiag.ha"}) {
    std::string text = fixtures::slurp(name);
    auto w = parse_array(text);
    CHECK(format_array(w) == text);
    CHECK(parse_array(format_array(w)) == w);
  }
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_array("heffter 3 4 4 3\n1 -2 -10 11\n-8 6 -3\n7 -4 -12 9\n");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_array("nonsense\n"), parse_error);
  CHECK_THROWS_AS(parse_array("heffter 3 4 4 3\n1 2 3 x\n"), parse_error);
  CHECK_THROWS_AS(parse_array(""), parse_error);
}

#pragma once

// Shared fixture loading and cyclic-sequence helpers for the test suites.

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "heffter/heffter.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) {
  return std::string(HEFFTER_TEST_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& name) {
  std::ifstream in(data_path(name), std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline heffter::HeffterArray fig1() {
  return *heffter::to_plain(heffter::parse_array(slurp("fig1.ha")));
}

inline heffter::HeffterArray fig2() {
  return *heffter::to_plain(heffter::parse_array(slurp("fig2.ha")));
}

inline heffter::HeffterArray fig3() {
  return *heffter::to_plain(heffter::parse_array(slurp("fig3.ha")));
}

inline heffter::WeakHeffterArray fig5() { return heffter::parse_array(slurp("fig5.ha")); }

inline heffter::HeffterArray blockdiag() {
  return *heffter::to_plain(heffter::parse_array(slurp("blockdiag.ha")));
}

// Orderings of the worked H(3,4) example: rows then columns.
inline std::pair<heffter::SystemOrdering, heffter::SystemOrdering> fig1_orderings() {
  auto h = fig1();
  auto of = heffter::parse_orderings(slurp("fig1.ord"));
  return {heffter::ordering_for_rows(h, of.row_sequences),
          heffter::ordering_for_cols(h, of.col_sequences)};
}

inline std::pair<heffter::SystemOrdering, heffter::SystemOrdering> fig5_orderings() {
  auto w = fig5();
  auto of = heffter::parse_orderings(slurp("fig5.ord"));
  heffter::SystemOrdering rom{heffter::weak_row_system(w), of.row_sequences};
  heffter::SystemOrdering com{heffter::weak_col_system(w), of.col_sequences};
  return {rom, com};
}

inline bool cyclically_equal(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (size_t r = 0; r < a.size(); ++r) {
    bool ok = true;
    for (size_t i = 0; i < a.size() && ok; ++i) {
      if (a[(r + i) % a.size()] != b[i]) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

// Lexicographically least rotation of a cyclic sequence.
inline std::vector<int> canonical_cycle(const std::vector<int>& v) {
  std::vector<int> best = v;
  for (size_t r = 1; r < v.size(); ++r) {
    std::vector<int> rot;
    rot.reserve(v.size());
    for (size_t i = 0; i < v.size(); ++i) rot.push_back(v[(r + i) % v.size()]);
    if (rot < best) best = rot;
  }
  return best;
}

}  // namespace fixtures

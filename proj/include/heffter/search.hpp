#pragma once

// Desk-scale constructive search: Heffter systems D(M,k) over half-set sign
// choices and partitions, and Heffter arrays H(m,n;s,t) by cell-by-cell
// backtracking with partial-sum and half-set pruning. Candidate orders are
// fixed (smallest support first, + before -), so identical inputs and
// budgets give identical outputs.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "heffter/arrays.hpp"
#include "heffter/orderings.hpp"

namespace heffter {

// ---------------------------------------------------------------------------
// Heffter systems

// First D(M,k) in the deterministic order, or nullopt after exhaustion.
// Parts are generated with strictly increasing supports, each part starting
// at the smallest unused support, and the very first element is positive;
// every partition is visited exactly once up to part order and global
// negation. budget caps visited nodes (0 = unlimited).
inline std::optional<HeffterSystem> find_heffter_system(int modulus, int part_size,
                                                        uint64_t budget = 0) {
  check_modulus(modulus);
  const int half = (modulus - 1) / 2;
  if (part_size < 3) throw parameter_error("part size must be at least 3");
  if (half % part_size != 0) {
    throw parameter_error("part size " + std::to_string(part_size) +
                          " does not divide (M-1)/2 = " + std::to_string(half));
  }

  std::vector<bool> used(half + 1, false);
  std::vector<std::vector<int>> parts;
  std::vector<int> current;
  long long current_sum = 0;
  uint64_t nodes = 0;

  // Recursive lambda over (part being built, elements placed overall).
  auto rec = [&](auto&& self, int placed) -> bool {
    if (budget != 0 && ++nodes > budget) return false;

    const int in_part = static_cast<int>(current.size());
    if (in_part == part_size) {
      if (canonicalize(current_sum, modulus) != 0) return false;
      parts.push_back(current);
      std::vector<int> saved = std::move(current);
      current.clear();
      long long saved_sum = current_sum;
      current_sum = 0;
      if (self(self, placed)) return true;
      current = std::move(saved);
      current_sum = saved_sum;
      parts.pop_back();
      return false;
    }

    if (placed == half) return true;

    int low = 1;
    if (in_part == 0) {
      // A new part must start at the smallest unused support.
      while (low <= half && used[low]) ++low;
      if (low > half) return false;
      for (int sign = 0; sign < 2; ++sign) {
        if (placed == 0 && sign == 1) break;  // global negation symmetry
        int v = sign == 0 ? low : -low;
        used[low] = true;
        current.push_back(v);
        current_sum += v;
        if (self(self, placed + 1)) return true;
        current_sum -= v;
        current.pop_back();
        used[low] = false;
      }
      return false;
    }

    low = std::abs(current.back()) + 1;  // supports increase within a part

    if (in_part == part_size - 1) {
      // Last element of the part is forced by the zero-sum condition.
      int forced = canonicalize(-current_sum, modulus);
      if (forced == 0) return false;
      int sup = std::abs(forced);
      if (sup < low || sup > half || used[sup]) return false;
      used[sup] = true;
      current.push_back(forced);
      current_sum += forced;
      if (self(self, placed + 1)) return true;
      current_sum -= forced;
      current.pop_back();
      used[sup] = false;
      return false;
    }

    for (int sup = low; sup <= half; ++sup) {
      if (used[sup]) continue;
      for (int sign = 0; sign < 2; ++sign) {
        int v = sign == 0 ? sup : -sup;
        used[sup] = true;
        current.push_back(v);
        current_sum += v;
        if (self(self, placed + 1)) return true;
        current_sum -= v;
        current.pop_back();
        used[sup] = false;
      }
    }
    return false;
  };

  if (!rec(rec, 0)) return std::nullopt;
  return HeffterSystem{modulus, part_size, parts};
}

// ---------------------------------------------------------------------------
// Heffter arrays

enum class ArrayMode { kGeneral, kInteger, kShiftable };

struct ArraySearchResult {
  std::optional<HeffterArray> array;
  bool budget_exhausted = false;
  uint64_t nodes = 0;
};

namespace detail {

// Lexicographic key with empty cells ordered before any entry.
inline std::vector<int> grid_key(const std::vector<std::optional<int>>& cells, bool negated) {
  std::vector<int> key;
  key.reserve(cells.size());
  for (const auto& c : cells) {
    if (!c) key.push_back(std::numeric_limits<int>::min());
    else key.push_back(negated ? -*c : *c);
  }
  return key;
}

// Lexicographically least grid under row/column permutation and global
// negation; skipped when the orbit is too large to enumerate.
inline HeffterArray canonical_array_form(const HeffterArray& h) {
  const int m = h.rows(), n = h.cols();
  double orbit = 1;
  for (int i = 2; i <= m; ++i) orbit *= i;
  for (int i = 2; i <= n; ++i) orbit *= i;
  if (orbit > 2e6) return h;

  std::vector<int> rp(m), cp(n);
  std::optional<std::vector<int>> best;
  std::vector<std::optional<int>> best_cells;
  for (int i = 0; i < m; ++i) rp[i] = i;
  do {
    for (int j = 0; j < n; ++j) cp[j] = j;
    do {
      std::vector<std::optional<int>> cells(static_cast<size_t>(m) * n);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) cells[i * n + j] = h.cell(rp[i], cp[j]);
      for (bool negated : {false, true}) {
        auto key = grid_key(cells, negated);
        if (!best || key < *best) {
          best = key;
          best_cells = cells;
          if (negated) {
            for (auto& c : best_cells)
              if (c) c = -*c;
          }
        }
      }
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  return HeffterArray(m, n, h.row_fill(), h.col_fill(), std::move(best_cells));
}

}  // namespace detail

// Cell-by-cell backtracking for an H(m,n;s,t) in the requested mode. The
// first row holds support 1 with positive sign (row permutation and global
// negation symmetry); candidate values run through unused supports in
// increasing order, + before -. The last filled cell of a row or column is
// forced by the zero-sum condition. budget caps visited nodes
// (0 = unlimited).
inline ArraySearchResult find_heffter_array(int m, int n, int s, int t,
                                            ArrayMode mode = ArrayMode::kGeneral,
                                            uint64_t budget = 0) {
  if (m * s != n * t) {
    throw parameter_error("need m*s = n*t, got " + std::to_string(m * s) + " and " +
                          std::to_string(n * t));
  }
  if (s < 3 || s > n || t < 3 || t > m) {
    throw parameter_error("need 3 <= s <= n and 3 <= t <= m");
  }
  if (mode != ArrayMode::kGeneral && !check_integer_necessity(m, n, s, t)) {
    throw parameter_error("integer arrays require ms = 0 or 3 (mod 4), got ms = " +
                          std::to_string(m * s));
  }
  if (mode == ArrayMode::kShiftable && !check_shiftable_necessity(m, n, s, t)) {
    throw parameter_error(
        "shiftable arrays require s and t even and at least 4 with ms = 0 (mod 4)");
  }

  const int M = 2 * m * s + 1;
  const int ms = m * s;
  const bool integral = mode != ArrayMode::kGeneral;
  const bool balanced = mode == ArrayMode::kShiftable;

  std::vector<std::optional<int>> cells(static_cast<size_t>(m) * n);
  std::vector<int> row_need(m, s), col_need(n, t);
  std::vector<long long> row_sum(m, 0), col_sum(n, 0);
  std::vector<int> row_pos(m, 0), row_neg(m, 0), col_pos(n, 0), col_neg(n, 0);
  std::vector<bool> used(ms + 1, false);

  ArraySearchResult result;
  uint64_t nodes = 0;
  bool out_of_budget = false;

  auto value_ok = [&](int r, int c, int v) {
    int sup = std::abs(v);
    if (sup < 1 || sup > ms || used[sup]) return false;
    if (sup == 1 && (r != 0 || v < 0)) return false;  // symmetry anchor
    if (balanced) {
      if (v > 0 && row_pos[r] + 1 > s / 2) return false;
      if (v < 0 && row_neg[r] + 1 > s / 2) return false;
      if (v > 0 && col_pos[c] + 1 > t / 2) return false;
      if (v < 0 && col_neg[c] + 1 > t / 2) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, int pos) -> bool {
    if (budget != 0 && ++nodes > budget) {
      out_of_budget = true;
      return false;
    }
    if (pos == m * n) return true;
    const int r = pos / n, c = pos % n;
    const int cells_left_in_row = n - c;   // including this one
    const int cells_left_in_col = m - r;

    // Row 0 must contain support 1 before it closes.
    if (r == 1 && c == 0 && !used[1]) return false;

    // Try leaving the cell empty.
    if (cells_left_in_row > row_need[r] && cells_left_in_col > col_need[c]) {
      if (self(self, pos + 1)) return true;
      if (out_of_budget) return false;
    }

    if (row_need[r] == 0 || col_need[c] == 0) return false;

    auto place = [&](int v) -> bool {
      cells[pos] = v;
      --row_need[r];
      --col_need[c];
      row_sum[r] += v;
      col_sum[c] += v;
      used[std::abs(v)] = true;
      (v > 0 ? row_pos[r] : row_neg[r])++;
      (v > 0 ? col_pos[c] : col_neg[c])++;
      bool row_closes = row_need[r] == 0;
      bool col_closes = col_need[c] == 0;
      bool ok = true;
      if (row_closes) ok = integral ? row_sum[r] == 0 : canonicalize(row_sum[r], M) == 0;
      if (ok && col_closes) ok = integral ? col_sum[c] == 0 : canonicalize(col_sum[c], M) == 0;
      if (ok && self(self, pos + 1)) return true;
      (v > 0 ? col_pos[c] : col_neg[c])--;
      (v > 0 ? row_pos[r] : row_neg[r])--;
      used[std::abs(v)] = false;
      col_sum[c] -= v;
      row_sum[r] -= v;
      ++col_need[c];
      ++row_need[r];
      cells[pos] = std::nullopt;
      return false;
    };

    const bool row_last = row_need[r] == 1;
    const bool col_last = col_need[c] == 1;
    if (row_last || col_last) {
      // Forced by whichever line closes here; both must agree when both do.
      std::optional<int> forced;
      if (integral) {
        long long v = row_last ? -row_sum[r] : -col_sum[c];
        if (row_last && col_last && -row_sum[r] != -col_sum[c]) return false;
        if (v == 0 || std::abs(v) > ms) return false;
        forced = static_cast<int>(v);
      } else {
        int v = canonicalize(row_last ? -row_sum[r] : -col_sum[c], M);
        if (row_last && col_last &&
            canonicalize(-row_sum[r], M) != canonicalize(-col_sum[c], M)) {
          return false;
        }
        if (v == 0) return false;
        forced = v;
      }
      if (!value_ok(r, c, *forced)) return false;
      return place(*forced);
    }

    for (int sup = 1; sup <= ms; ++sup) {
      if (used[sup]) continue;
      for (int sign = 0; sign < 2; ++sign) {
        int v = sign == 0 ? sup : -sup;
        if (!value_ok(r, c, v)) continue;
        if (place(v)) return true;
        if (out_of_budget) return false;
      }
    }
    return false;
  };

  bool found = rec(rec, 0);
  result.nodes = nodes;
  result.budget_exhausted = out_of_budget;
  if (!found) return result;

  HeffterArray h(m, n, s, t, std::move(cells));
  result.array = detail::canonical_array_form(h);
  return result;
}

}  // namespace heffter

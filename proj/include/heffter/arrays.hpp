#pragma once

// Heffter arrays H(m,n;s,t) with optional empty cells, weak Heffter arrays,
// the integer/shiftable variants, the support shift, block-diagonal
// detection, and the text file format.
//
// Grids store raw integer entries: the integer-arithmetic validators need to
// distinguish an entry e from e + M, so entries are canonicalized on the fly
// by the modular checks, never at rest. Empty cells are a first-class state,
// not an entry 0.

#include <charconv>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "heffter/algebra.hpp"

namespace heffter {

// ---------------------------------------------------------------------------
// Validation reports

struct Violation {
  std::string kind;
  std::string location;
  std::string detail;
};

struct ValidationReport {
  bool verdict = true;
  std::vector<Violation> violations;

  void add(std::string kind, std::string location, std::string detail) {
    verdict = false;
    violations.push_back({std::move(kind), std::move(location), std::move(detail)});
  }

  bool has(const std::string& kind) const {
    for (const auto& v : violations)
      if (v.kind == kind) return true;
    return false;
  }
};

// ---------------------------------------------------------------------------
// Plain Heffter arrays

class HeffterArray {
 public:
  // cells is row-major, size rows*cols; disengaged optionals are empty cells.
  HeffterArray(int rows, int cols, int row_fill, int col_fill,
               std::vector<std::optional<int>> cells)
      : rows_(rows), cols_(cols), row_fill_(row_fill), col_fill_(col_fill),
        cells_(std::move(cells)) {
    if (rows_ <= 0 || cols_ <= 0) throw parameter_error("array dimensions must be positive");
    if (static_cast<long long>(rows_) * cols_ != static_cast<long long>(cells_.size())) {
      throw parameter_error("cell count does not match declared dimensions");
    }
    if (row_fill_ <= 0 || col_fill_ <= 0) throw parameter_error("fill counts must be positive");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int row_fill() const { return row_fill_; }   // s: filled cells per row
  int col_fill() const { return col_fill_; }   // t: filled cells per column
  int modulus() const { return 2 * rows_ * row_fill_ + 1; }

  const std::optional<int>& cell(int r, int c) const { return cells_[r * cols_ + c]; }
  std::optional<int>& cell(int r, int c) { return cells_[r * cols_ + c]; }

  // Raw entries in row-major order.
  std::vector<int> entries() const {
    std::vector<int> out;
    for (const auto& c : cells_)
      if (c) out.push_back(*c);
    return out;
  }

  friend bool operator==(const HeffterArray& a, const HeffterArray& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.row_fill_ == b.row_fill_ &&
           a.col_fill_ == b.col_fill_ && a.cells_ == b.cells_;
  }

 private:
  int rows_, cols_, row_fill_, col_fill_;
  std::vector<std::optional<int>> cells_;
};

namespace detail {

inline std::string cell_name(int r, int c) {
  return "cell (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")";
}

}  // namespace detail

// Checks every Heffter-array invariant and lists all violations; the report
// is the diagnostic surface, so nothing fails fast.
inline ValidationReport validate(const HeffterArray& h) {
  ValidationReport report;
  const int m = h.rows(), n = h.cols(), s = h.row_fill(), t = h.col_fill();
  const int M = h.modulus();

  if (m * s != n * t) {
    report.add("fill-balance", "array",
               "m*s = " + std::to_string(m * s) + " but n*t = " + std::to_string(n * t));
  }
  if (s < 3 || s > n) {
    report.add("row-fill-range", "array",
               "s = " + std::to_string(s) + " outside [3, n = " + std::to_string(n) + "]");
  }
  if (t < 3 || t > m) {
    report.add("col-fill-range", "array",
               "t = " + std::to_string(t) + " outside [3, m = " + std::to_string(m) + "]");
  }

  for (int r = 0; r < m; ++r) {
    int filled = 0;
    for (int c = 0; c < n; ++c)
      if (h.cell(r, c)) ++filled;
    if (filled != s) {
      report.add("row-fill-count", "row " + std::to_string(r + 1),
                 std::to_string(filled) + " filled cells, expected " + std::to_string(s));
    }
  }
  for (int c = 0; c < n; ++c) {
    int filled = 0;
    for (int r = 0; r < m; ++r)
      if (h.cell(r, c)) ++filled;
    if (filled != t) {
      report.add("col-fill-count", "column " + std::to_string(c + 1),
                 std::to_string(filled) + " filled cells, expected " + std::to_string(t));
    }
  }

  // Half-set property of the filled entries.
  std::set<int> seen;  // canonical values already placed
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) {
      if (!h.cell(r, c)) continue;
      int canon = canonicalize(*h.cell(r, c), M);
      if (canon == 0) {
        report.add("zero-entry", detail::cell_name(r, c),
                   "entry " + std::to_string(*h.cell(r, c)) + " is 0 mod " + std::to_string(M));
        continue;
      }
      if (seen.count(canon) || seen.count(-canon)) {
        report.add("half-set", detail::cell_name(r, c),
                   "element " + std::to_string(canon) + " repeats a +/- pair");
      }
      seen.insert(canon);
    }
  }

  for (int r = 0; r < m; ++r) {
    long long sum = 0;
    for (int c = 0; c < n; ++c)
      if (h.cell(r, c)) sum += *h.cell(r, c);
    int canon = canonicalize(sum, M);
    if (canon != 0) {
      report.add("row-sum", "row " + std::to_string(r + 1),
                 "sums to " + std::to_string(canon) + " mod " + std::to_string(M));
    }
  }
  for (int c = 0; c < n; ++c) {
    long long sum = 0;
    for (int r = 0; r < m; ++r)
      if (h.cell(r, c)) sum += *h.cell(r, c);
    int canon = canonicalize(sum, M);
    if (canon != 0) {
      report.add("col-sum", "column " + std::to_string(c + 1),
                 "sums to " + std::to_string(canon) + " mod " + std::to_string(M));
    }
  }

  return report;
}

// True iff h is a valid Heffter array whose rows and columns sum to 0 over
// the integers and whose support is exactly {1, ..., ms}.
inline bool validate_integer(const HeffterArray& h) {
  if (!validate(h).verdict) return false;
  const int m = h.rows(), n = h.cols();
  for (int r = 0; r < m; ++r) {
    long long sum = 0;
    for (int c = 0; c < n; ++c)
      if (h.cell(r, c)) sum += *h.cell(r, c);
    if (sum != 0) return false;
  }
  for (int c = 0; c < n; ++c) {
    long long sum = 0;
    for (int r = 0; r < m; ++r)
      if (h.cell(r, c)) sum += *h.cell(r, c);
    if (sum != 0) return false;
  }
  std::set<int> sup = support(h.entries());
  const int ms = m * h.row_fill();
  if (static_cast<int>(sup.size()) != ms) return false;
  return *sup.begin() == 1 && *sup.rbegin() == ms;
}

// True iff h is integer and every row and column has as many positive as
// negative entries.
inline bool validate_shiftable(const HeffterArray& h) {
  if (!validate_integer(h)) return false;
  for (int r = 0; r < h.rows(); ++r) {
    int pos = 0, neg = 0;
    for (int c = 0; c < h.cols(); ++c) {
      if (!h.cell(r, c)) continue;
      (*h.cell(r, c) > 0 ? pos : neg)++;
    }
    if (pos != neg) return false;
  }
  for (int c = 0; c < h.cols(); ++c) {
    int pos = 0, neg = 0;
    for (int r = 0; r < h.rows(); ++r) {
      if (!h.cell(r, c)) continue;
      (*h.cell(r, c) > 0 ? pos : neg)++;
    }
    if (pos != neg) return false;
  }
  return true;
}

// The shifted matrix H +/- k: positive entries move up by k, negative ones
// down by k, so line sums stay 0 and the support becomes {1+k, ..., ms+k}.
inline std::vector<std::vector<std::optional<int>>> shift(const HeffterArray& h, int k) {
  if (k < 0) throw parameter_error("shift amount must be nonnegative");
  if (!validate_shiftable(h)) {
    throw precondition_error("shift requires a shiftable Heffter array");
  }
  std::vector<std::vector<std::optional<int>>> out(h.rows(),
      std::vector<std::optional<int>>(h.cols()));
  for (int r = 0; r < h.rows(); ++r) {
    for (int c = 0; c < h.cols(); ++c) {
      if (!h.cell(r, c)) continue;
      int a = *h.cell(r, c);
      out[r][c] = a > 0 ? a + k : a - k;
    }
  }
  return out;
}

// Necessary condition for an integer H(m,n;s,t): ms = 0 or 3 (mod 4).
inline bool check_integer_necessity(int m, int n, int s, int t) {
  (void)n;
  (void)t;
  int r = (m * s) % 4;
  return r == 0 || r == 3;
}

// Necessary condition for a shiftable H(m,n;s,t): s, t even and >= 4, and
// ms = 0 (mod 4).
inline bool check_shiftable_necessity(int m, int n, int s, int t) {
  (void)n;
  return s % 2 == 0 && t % 2 == 0 && s >= 4 && t >= 4 && (m * s) % 4 == 0;
}

// True iff the bipartite row/column incidence graph of filled cells is
// disconnected, i.e. rows and columns split into two independent blocks.
inline bool is_block_diagonal(const HeffterArray& h) {
  const int m = h.rows(), n = h.cols();
  std::vector<int> parent(m + n);
  for (int i = 0; i < m + n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < n; ++c)
      if (h.cell(r, c)) parent[find(r)] = find(m + c);
  int root = find(0);
  for (int i = 1; i < m + n; ++i)
    if (find(i) != root) return true;
  return false;
}

inline HeffterArray transpose(const HeffterArray& h) {
  std::vector<std::optional<int>> cells(static_cast<size_t>(h.rows()) * h.cols());
  for (int r = 0; r < h.rows(); ++r)
    for (int c = 0; c < h.cols(); ++c) cells[c * h.rows() + r] = h.cell(r, c);
  return HeffterArray(h.cols(), h.rows(), h.col_fill(), h.row_fill(), std::move(cells));
}

inline HeffterArray negate(const HeffterArray& h) {
  std::vector<std::optional<int>> cells(static_cast<size_t>(h.rows()) * h.cols());
  for (int r = 0; r < h.rows(); ++r)
    for (int c = 0; c < h.cols(); ++c)
      if (h.cell(r, c)) cells[r * h.cols() + c] = -*h.cell(r, c);
  return HeffterArray(h.rows(), h.cols(), h.row_fill(), h.col_fill(), std::move(cells));
}

// ---------------------------------------------------------------------------
// Weak Heffter arrays

// A filled weak cell carries one value per role: row_value enters the row
// sum, col_value the column sum, and col_value is row_value or -row_value.
struct WeakCell {
  int row_value;
  int col_value;

  bool weak() const { return row_value != col_value; }

  friend bool operator==(const WeakCell& a, const WeakCell& b) {
    return a.row_value == b.row_value && a.col_value == b.col_value;
  }
};

class WeakHeffterArray {
 public:
  WeakHeffterArray(int rows, int cols, int row_fill, int col_fill,
                   std::vector<std::optional<WeakCell>> cells)
      : rows_(rows), cols_(cols), row_fill_(row_fill), col_fill_(col_fill),
        cells_(std::move(cells)) {
    if (rows_ <= 0 || cols_ <= 0) throw parameter_error("array dimensions must be positive");
    if (static_cast<long long>(rows_) * cols_ != static_cast<long long>(cells_.size())) {
      throw parameter_error("cell count does not match declared dimensions");
    }
    if (row_fill_ <= 0 || col_fill_ <= 0) throw parameter_error("fill counts must be positive");
    for (const auto& c : cells_) {
      if (c && std::abs(c->row_value) != std::abs(c->col_value)) {
        throw domain_error("malformed weak cell: |" + std::to_string(c->row_value) +
                           "| != |" + std::to_string(c->col_value) + "|");
      }
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int row_fill() const { return row_fill_; }
  int col_fill() const { return col_fill_; }
  int modulus() const { return 2 * rows_ * row_fill_ + 1; }

  const std::optional<WeakCell>& cell(int r, int c) const { return cells_[r * cols_ + c]; }

  bool has_weak_cells() const {
    for (const auto& c : cells_)
      if (c && c->weak()) return true;
    return false;
  }

  friend bool operator==(const WeakHeffterArray& a, const WeakHeffterArray& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.row_fill_ == b.row_fill_ &&
           a.col_fill_ == b.col_fill_ && a.cells_ == b.cells_;
  }

 private:
  int rows_, cols_, row_fill_, col_fill_;
  std::vector<std::optional<WeakCell>> cells_;
};

// Every Heffter array is a weak one with equal row and column values.
inline WeakHeffterArray as_weak(const HeffterArray& h) {
  std::vector<std::optional<WeakCell>> cells(static_cast<size_t>(h.rows()) * h.cols());
  for (int r = 0; r < h.rows(); ++r)
    for (int c = 0; c < h.cols(); ++c)
      if (h.cell(r, c)) cells[r * h.cols() + c] = WeakCell{*h.cell(r, c), *h.cell(r, c)};
  return WeakHeffterArray(h.rows(), h.cols(), h.row_fill(), h.col_fill(), std::move(cells));
}

// Plain view of a weak array; empty when any cell has opposite signs.
inline std::optional<HeffterArray> to_plain(const WeakHeffterArray& w) {
  if (w.has_weak_cells()) return std::nullopt;
  std::vector<std::optional<int>> cells(static_cast<size_t>(w.rows()) * w.cols());
  for (int r = 0; r < w.rows(); ++r)
    for (int c = 0; c < w.cols(); ++c)
      if (w.cell(r, c)) cells[r * w.cols() + c] = w.cell(r, c)->row_value;
  return HeffterArray(w.rows(), w.cols(), w.row_fill(), w.col_fill(), std::move(cells));
}

inline ValidationReport validate_weak(const WeakHeffterArray& w) {
  ValidationReport report;
  const int m = w.rows(), n = w.cols(), s = w.row_fill(), t = w.col_fill();
  const int M = w.modulus();
  const int ms = m * s;

  if (m * s != n * t) {
    report.add("fill-balance", "array",
               "m*s = " + std::to_string(m * s) + " but n*t = " + std::to_string(n * t));
  }
  if (s < 3 || s > n) {
    report.add("row-fill-range", "array",
               "s = " + std::to_string(s) + " outside [3, n = " + std::to_string(n) + "]");
  }
  if (t < 3 || t > m) {
    report.add("col-fill-range", "array",
               "t = " + std::to_string(t) + " outside [3, m = " + std::to_string(m) + "]");
  }

  for (int r = 0; r < m; ++r) {
    int filled = 0;
    for (int c = 0; c < n; ++c)
      if (w.cell(r, c)) ++filled;
    if (filled != s) {
      report.add("row-fill-count", "row " + std::to_string(r + 1),
                 std::to_string(filled) + " filled cells, expected " + std::to_string(s));
    }
  }
  for (int c = 0; c < n; ++c) {
    int filled = 0;
    for (int r = 0; r < m; ++r)
      if (w.cell(r, c)) ++filled;
    if (filled != t) {
      report.add("col-fill-count", "column " + std::to_string(c + 1),
                 std::to_string(filled) + " filled cells, expected " + std::to_string(t));
    }
  }

  // Supports must be pairwise distinct and exactly those of a half-set.
  std::set<int> supports;
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) {
      if (!w.cell(r, c)) continue;
      int canon = canonicalize(w.cell(r, c)->row_value, M);
      if (canon == 0) {
        report.add("zero-entry", detail::cell_name(r, c), "entry is 0 mod " + std::to_string(M));
        continue;
      }
      int sup = std::abs(canon);
      if (!supports.insert(sup).second) {
        report.add("support-dup", detail::cell_name(r, c),
                   "support " + std::to_string(sup) + " appears twice");
      } else if (sup > ms) {
        report.add("support-range", detail::cell_name(r, c),
                   "support " + std::to_string(sup) + " exceeds ms = " + std::to_string(ms));
      }
    }
  }

  for (int r = 0; r < m; ++r) {
    long long sum = 0;
    for (int c = 0; c < n; ++c)
      if (w.cell(r, c)) sum += w.cell(r, c)->row_value;
    int canon = canonicalize(sum, M);
    if (canon != 0) {
      report.add("row-sum", "row " + std::to_string(r + 1),
                 "row signs sum to " + std::to_string(canon) + " mod " + std::to_string(M));
    }
  }
  for (int c = 0; c < n; ++c) {
    long long sum = 0;
    for (int r = 0; r < m; ++r)
      if (w.cell(r, c)) sum += w.cell(r, c)->col_value;
    int canon = canonicalize(sum, M);
    if (canon != 0) {
      report.add("col-sum", "column " + std::to_string(c + 1),
                 "column signs sum to " + std::to_string(canon) + " mod " + std::to_string(M));
    }
  }

  return report;
}

// ---------------------------------------------------------------------------
// Text format
//
//   heffter <m> <n> <s> <t>
//   <m lines of n whitespace-separated tokens>
//
// Tokens: an integer entry, `.` for an empty cell, or a weak cell `a:b`
// with b in {a, -a}. ASCII only; serialization round-trips exactly.

namespace detail {

inline int parse_int(const std::string& token, int line) {
  int value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw parse_error(line, "expected an integer, got '" + token + "'");
  }
  return value;
}

inline std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : line) {
    if (ch == ' ' || ch == '\t' || ch == '\r') {
      if (!cur.empty()) tokens.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

}  // namespace detail

inline WeakHeffterArray parse_array(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char ch : text) {
      if (ch == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    if (!cur.empty()) lines.push_back(cur);
  }

  auto header = lines.empty() ? std::vector<std::string>{} : detail::split_tokens(lines[0]);
  if (header.size() != 5 || header[0] != "heffter") {
    throw parse_error(1, "expected header 'heffter <m> <n> <s> <t>'");
  }
  int m = detail::parse_int(header[1], 1);
  int n = detail::parse_int(header[2], 1);
  int s = detail::parse_int(header[3], 1);
  int t = detail::parse_int(header[4], 1);
  if (m <= 0 || n <= 0 || s <= 0 || t <= 0) {
    throw parse_error(1, "array parameters must be positive");
  }

  std::vector<std::optional<WeakCell>> cells;
  cells.reserve(static_cast<size_t>(m) * n);
  int row = 0;
  for (size_t i = 1; i < lines.size(); ++i) {
    auto tokens = detail::split_tokens(lines[i]);
    if (tokens.empty()) continue;  // ignore blank lines
    int line_no = static_cast<int>(i) + 1;
    if (row == m) throw parse_error(line_no, "more than " + std::to_string(m) + " grid rows");
    if (static_cast<int>(tokens.size()) != n) {
      throw parse_error(line_no, "expected " + std::to_string(n) + " tokens, got " +
                                     std::to_string(tokens.size()));
    }
    for (const auto& tok : tokens) {
      if (tok == ".") {
        cells.push_back(std::nullopt);
        continue;
      }
      auto colon = tok.find(':');
      if (colon == std::string::npos) {
        int v = detail::parse_int(tok, line_no);
        cells.push_back(WeakCell{v, v});
      } else {
        int a = detail::parse_int(tok.substr(0, colon), line_no);
        int b = detail::parse_int(tok.substr(colon + 1), line_no);
        if (b != a && b != -a) {
          throw parse_error(line_no, "weak cell '" + tok + "' must pair a with a or -a");
        }
        cells.push_back(WeakCell{a, b});
      }
    }
    ++row;
  }
  if (row != m) {
    throw parse_error(static_cast<int>(lines.size()) + 1,
                      "expected " + std::to_string(m) + " grid rows, got " + std::to_string(row));
  }
  return WeakHeffterArray(m, n, s, t, std::move(cells));
}

inline std::string format_array(const WeakHeffterArray& w) {
  std::ostringstream os;
  os << "heffter " << w.rows() << ' ' << w.cols() << ' ' << w.row_fill() << ' '
     << w.col_fill() << '\n';
  for (int r = 0; r < w.rows(); ++r) {
    for (int c = 0; c < w.cols(); ++c) {
      if (c) os << ' ';
      const auto& cell = w.cell(r, c);
      if (!cell) {
        os << '.';
      } else if (cell->weak()) {
        os << cell->row_value << ':' << cell->col_value;
      } else {
        os << cell->row_value;
      }
    }
    os << '\n';
  }
  return os.str();
}

inline std::string format_array(const HeffterArray& h) { return format_array(as_weak(h)); }

}  // namespace heffter

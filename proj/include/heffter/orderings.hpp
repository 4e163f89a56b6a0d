#pragma once

// Orderings of Heffter-system parts: partial sums, simplicity, compatible
// row/column orderings, the backtracking searches for them, and the
// distinct-partial-sums (Alspach) checker and sweep.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "heffter/arrays.hpp"

namespace heffter {

// ---------------------------------------------------------------------------
// Heffter systems and their orderings

// D(M,k): a partition of a half-set of Z_M into zero-sum parts of size k.
// Parts hold canonical values.
struct HeffterSystem {
  int modulus = 0;
  int part_size = 0;
  std::vector<std::vector<int>> parts;
};

// Empty result means valid; otherwise the first problem found.
inline std::optional<std::string> system_problem(const HeffterSystem& sys) {
  check_modulus(sys.modulus);
  std::vector<int> all;
  for (size_t i = 0; i < sys.parts.size(); ++i) {
    const auto& part = sys.parts[i];
    if (static_cast<int>(part.size()) != sys.part_size) {
      return "part " + std::to_string(i + 1) + " has size " + std::to_string(part.size()) +
             ", expected " + std::to_string(sys.part_size);
    }
    long long sum = 0;
    for (int v : part) {
      sum += canonicalize(v, sys.modulus);
      all.push_back(canonicalize(v, sys.modulus));
    }
    if (canonicalize(sum, sys.modulus) != 0) {
      return "part " + std::to_string(i + 1) + " does not sum to 0 mod " +
             std::to_string(sys.modulus);
    }
  }
  if (!is_half_set(all, sys.modulus)) {
    return "parts do not partition a half-set of Z_" + std::to_string(sys.modulus);
  }
  return std::nullopt;
}

inline bool is_valid_system(const HeffterSystem& sys) { return !system_problem(sys); }

// Row system of a Heffter array: part i holds the canonical entries of row i.
inline HeffterSystem row_system(const HeffterArray& h) {
  HeffterSystem sys{h.modulus(), h.row_fill(), {}};
  for (int r = 0; r < h.rows(); ++r) {
    std::vector<int> part;
    for (int c = 0; c < h.cols(); ++c)
      if (h.cell(r, c)) part.push_back(canonicalize(*h.cell(r, c), h.modulus()));
    sys.parts.push_back(std::move(part));
  }
  return sys;
}

inline HeffterSystem col_system(const HeffterArray& h) {
  HeffterSystem sys{h.modulus(), h.col_fill(), {}};
  for (int c = 0; c < h.cols(); ++c) {
    std::vector<int> part;
    for (int r = 0; r < h.rows(); ++r)
      if (h.cell(r, c)) part.push_back(canonicalize(*h.cell(r, c), h.modulus()));
    sys.parts.push_back(std::move(part));
  }
  return sys;
}

// Row/column systems of a weak array use the row/column signed values.
inline HeffterSystem weak_row_system(const WeakHeffterArray& w) {
  HeffterSystem sys{w.modulus(), w.row_fill(), {}};
  for (int r = 0; r < w.rows(); ++r) {
    std::vector<int> part;
    for (int c = 0; c < w.cols(); ++c)
      if (w.cell(r, c)) part.push_back(canonicalize(w.cell(r, c)->row_value, w.modulus()));
    sys.parts.push_back(std::move(part));
  }
  return sys;
}

inline HeffterSystem weak_col_system(const WeakHeffterArray& w) {
  HeffterSystem sys{w.modulus(), w.col_fill(), {}};
  for (int c = 0; c < w.cols(); ++c) {
    std::vector<int> part;
    for (int r = 0; r < w.rows(); ++r)
      if (w.cell(r, c)) part.push_back(canonicalize(w.cell(r, c)->col_value, w.modulus()));
    sys.parts.push_back(std::move(part));
  }
  return sys;
}

// One cyclic sequence per part; each sequence is a permutation of its part.
struct SystemOrdering {
  HeffterSystem system;
  std::vector<std::vector<int>> sequences;
};

inline void check_ordering(const SystemOrdering& om) {
  if (om.sequences.size() != om.system.parts.size()) {
    throw domain_error("ordering has " + std::to_string(om.sequences.size()) +
                       " sequences for " + std::to_string(om.system.parts.size()) + " parts");
  }
  for (size_t i = 0; i < om.sequences.size(); ++i) {
    std::vector<int> a = om.sequences[i], b = om.system.parts[i];
    for (int& v : a) v = canonicalize(v, om.system.modulus);
    for (int& v : b) v = canonicalize(v, om.system.modulus);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) {
      throw domain_error("sequence " + std::to_string(i + 1) +
                         " is not a permutation of its part");
    }
  }
}

// ---------------------------------------------------------------------------
// Partial sums and simplicity

inline std::vector<int> partial_sums(const std::vector<int>& seq, int modulus) {
  std::vector<int> sums;
  sums.reserve(seq.size());
  long long acc = 0;
  for (int v : seq) {
    acc += canonicalize(v, modulus);
    sums.push_back(canonicalize(acc, modulus));
  }
  return sums;
}

// A zero-sum cyclic sequence is simple iff its partial sums are pairwise
// distinct mod M. A wrapping block sums to 0 iff its complement does, so
// prefix sums alone decide the cyclic condition.
inline bool is_simple(const std::vector<int>& seq, int modulus) {
  std::set<int> seen;
  for (int s : partial_sums(seq, modulus)) {
    if (!seen.insert(s).second) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Permutations of canonical values

class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::map<int, int> mapping) : map_(std::move(mapping)) {
    std::set<int> image;
    for (const auto& [k, v] : map_) {
      if (!map_.count(v)) throw domain_error("permutation image leaves its domain");
      if (!image.insert(v).second) throw domain_error("permutation is not injective");
    }
  }

  const std::map<int, int>& mapping() const { return map_; }
  size_t size() const { return map_.size(); }

  int apply(int x) const {
    auto it = map_.find(x);
    if (it == map_.end()) throw domain_error("value " + std::to_string(x) + " not in domain");
    return it->second;
  }

  // this after inner; domains must coincide.
  Permutation compose(const Permutation& inner) const {
    if (map_.size() != inner.map_.size()) throw domain_error("composing unequal domains");
    std::map<int, int> out;
    for (const auto& [k, v] : inner.map_) out[k] = apply(v);
    return Permutation(std::move(out));
  }

  // Disjoint cycles; each starts at its minimum, listed by increasing minimum.
  std::vector<std::vector<int>> cycles() const {
    std::vector<std::vector<int>> out;
    std::set<int> done;
    for (const auto& [k, v] : map_) {
      if (done.count(k)) continue;
      std::vector<int> cyc{k};
      done.insert(k);
      for (int x = v; x != k; x = map_.at(x)) {
        cyc.push_back(x);
        done.insert(x);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  bool single_cycle() const { return !map_.empty() && cycles().size() == 1; }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.map_ == b.map_; }

 private:
  std::map<int, int> map_;
};

// The permutation of the half-set sending each element to its cyclic
// successor within its part.
inline Permutation induced_permutation(const SystemOrdering& om) {
  check_ordering(om);
  std::map<int, int> map;
  for (const auto& seq : om.sequences) {
    for (size_t i = 0; i < seq.size(); ++i) {
      int from = canonicalize(seq[i], om.system.modulus);
      int to = canonicalize(seq[(i + 1) % seq.size()], om.system.modulus);
      map[from] = to;
    }
  }
  return Permutation(std::move(map));
}

// Compatible orderings compose to a single cycle on the shared half-set.
inline bool are_compatible(const SystemOrdering& row_ordering,
                           const SystemOrdering& col_ordering) {
  if (row_ordering.system.modulus != col_ordering.system.modulus) {
    throw domain_error("orderings over different moduli");
  }
  Permutation r = induced_permutation(row_ordering);
  Permutation c = induced_permutation(col_ordering);
  std::set<int> dr, dc;
  for (const auto& [k, v] : r.mapping()) dr.insert(k);
  for (const auto& [k, v] : c.mapping()) dc.insert(k);
  if (dr != dc) throw domain_error("orderings act on different half-sets");
  return r.compose(c).single_cycle();
}

// ---------------------------------------------------------------------------
// Ordering searches

namespace detail {

// All cyclic orderings of a part, as rotation-class representatives: the
// first element is the part minimum, the remaining elements run through
// permutations in lexicographic order.
inline std::vector<std::vector<int>> rotation_classes(std::vector<int> part) {
  std::sort(part.begin(), part.end());
  std::vector<int> rest(part.begin() + 1, part.end());
  std::vector<std::vector<int>> out;
  do {
    std::vector<int> seq{part.front()};
    seq.insert(seq.end(), rest.begin(), rest.end());
    out.push_back(std::move(seq));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

}  // namespace detail

// First simple cyclic ordering of a zero-sum part in the deterministic
// candidate order, if one exists.
inline std::optional<std::vector<int>> find_simple_ordering(std::vector<int> part, int modulus) {
  for (int& v : part) v = canonicalize(v, modulus);
  for (auto& cand : detail::rotation_classes(std::move(part))) {
    if (is_simple(cand, modulus)) return cand;
  }
  return std::nullopt;
}

enum class SimplePolicy {
  kPreferSimple,   // try simple orderings first, fall back to the rest
  kRequireSimple,  // consider simple orderings only
};

struct CompatiblePair {
  SystemOrdering row_ordering;
  SystemOrdering col_ordering;
};

// Backtracking search for compatible orderings of the row and column
// systems of h. Row choices are enumerated outermost; column parts are
// assigned one at a time while a union-find rejects any cycle of the
// composition that closes before covering the whole half-set.
// budget caps visited search nodes (0 = unlimited).
inline std::optional<CompatiblePair> find_compatible_pair(
    const HeffterArray& h, SimplePolicy policy = SimplePolicy::kPreferSimple,
    uint64_t budget = 0) {
  if (!validate(h).verdict) {
    throw precondition_error("find_compatible_pair requires a valid Heffter array");
  }
  const int M = h.modulus();
  HeffterSystem rows = row_system(h);
  HeffterSystem cols = col_system(h);

  auto candidates = [&](const std::vector<int>& part) {
    auto all = detail::rotation_classes(part);
    std::vector<std::vector<int>> simple, rest;
    for (auto& seq : all) {
      (is_simple(seq, M) ? simple : rest).push_back(std::move(seq));
    }
    if (policy == SimplePolicy::kPreferSimple) {
      simple.insert(simple.end(), rest.begin(), rest.end());
    }
    return simple;
  };

  std::vector<std::vector<std::vector<int>>> row_cands, col_cands;
  for (const auto& p : rows.parts) row_cands.push_back(candidates(p));
  for (const auto& p : cols.parts) col_cands.push_back(candidates(p));
  for (const auto& c : row_cands)
    if (c.empty()) return std::nullopt;
  for (const auto& c : col_cands)
    if (c.empty()) return std::nullopt;

  // Index the half-set for the union-find.
  std::vector<int> half;
  for (const auto& p : rows.parts)
    for (int v : p) half.push_back(v);
  std::sort(half.begin(), half.end());
  const int L = static_cast<int>(half.size());
  std::map<int, int> index;
  for (int i = 0; i < L; ++i) index[half[i]] = i;

  uint64_t nodes = 0;
  auto out_of_budget = [&]() { return budget != 0 && ++nodes > budget; };

  std::map<int, int> row_next;  // the chosen omega_r as a map
  std::vector<size_t> row_choice(rows.parts.size(), 0);

  // Union-find over half-set indices, snapshot-restored across column depths.
  std::vector<int> parent(L);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  // Returns the chosen column candidate indices, or nullopt.
  std::vector<size_t> col_choice(cols.parts.size(), 0);
  auto search_columns = [&]() -> bool {
    std::vector<std::vector<int>> snapshots;
    std::iota(parent.begin(), parent.end(), 0);
    int links = 0;
    size_t depth = 0;
    std::vector<size_t> cursor(cols.parts.size(), 0);
    snapshots.push_back(parent);
    while (true) {
      if (depth == cols.parts.size()) return true;
      bool advanced = false;
      for (size_t ci = cursor[depth]; ci < col_cands[depth].size(); ++ci) {
        if (out_of_budget()) return false;
        const auto& seq = col_cands[depth][ci];
        // Tentatively add sigma(a) = omega_r(omega_c(a)) for a in this part.
        std::vector<int> saved = parent;
        bool ok = true;
        int added = 0;
        for (size_t i = 0; i < seq.size() && ok; ++i) {
          int a = seq[i];
          int b = row_next.at(seq[(i + 1) % seq.size()]);
          int ia = index.at(a), ib = index.at(b);
          int ra = find(ia), rb = find(ib);
          if (ra == rb) {
            // Closing a cycle is only legal on the very last link.
            if (links + added + 1 != L) ok = false;
          } else {
            parent[ra] = rb;
          }
          ++added;
        }
        if (ok) {
          col_choice[depth] = ci;
          cursor[depth] = ci + 1;
          links += added;
          snapshots.push_back(saved);
          ++depth;
          if (depth < cols.parts.size()) cursor[depth] = 0;
          advanced = true;
          break;
        }
        parent = saved;
      }
      if (advanced) continue;
      if (depth == 0) return false;
      --depth;
      parent = snapshots.back();
      snapshots.pop_back();
      links -= static_cast<int>(cols.parts[depth].size());
    }
  };

  // Odometer over row candidates.
  while (true) {
    row_next.clear();
    for (size_t pi = 0; pi < rows.parts.size(); ++pi) {
      const auto& seq = row_cands[pi][row_choice[pi]];
      for (size_t i = 0; i < seq.size(); ++i) {
        row_next[seq[i]] = seq[(i + 1) % seq.size()];
      }
    }
    if (search_columns()) {
      SystemOrdering row_om{rows, {}};
      for (size_t pi = 0; pi < rows.parts.size(); ++pi)
        row_om.sequences.push_back(row_cands[pi][row_choice[pi]]);
      SystemOrdering col_om{cols, {}};
      for (size_t pi = 0; pi < cols.parts.size(); ++pi)
        col_om.sequences.push_back(col_cands[pi][col_choice[pi]]);
      return CompatiblePair{std::move(row_om), std::move(col_om)};
    }
    if (budget != 0 && nodes > budget) return std::nullopt;
    // Advance the odometer (last part varies fastest).
    size_t pos = rows.parts.size();
    while (pos > 0) {
      --pos;
      if (++row_choice[pos] < row_cands[pos].size()) break;
      row_choice[pos] = 0;
      if (pos == 0) return std::nullopt;
    }
  }
}

// ---------------------------------------------------------------------------
// Distinct partial sums (the Alspach condition)

// A linear ordering of A with pairwise-distinct partial sums, found by
// exhaustive backtracking over candidates in increasing canonical order.
inline std::optional<std::vector<int>> alspach_check(int modulus, const std::vector<int>& subset) {
  check_modulus(modulus);
  if (subset.empty()) throw domain_error("subset must be nonempty");
  std::vector<int> elems;
  std::set<int> dedup;
  for (int v : subset) {
    int c = canonicalize(v, modulus);
    if (c == 0) throw domain_error("subset must not contain 0");
    if (!dedup.insert(c).second) throw domain_error("subset elements must be distinct");
    elems.push_back(c);
  }
  std::sort(elems.begin(), elems.end());

  const int k = static_cast<int>(elems.size());
  std::vector<int> order;
  std::vector<bool> used(k, false);
  std::vector<bool> sum_seen(modulus, false);

  // Iterative depth-first search with explicit undo.
  std::vector<int> choice;
  order.reserve(k);
  int sum = 0;
  auto try_extend = [&](int from) -> int {
    for (int i = from; i < k; ++i) {
      if (used[i]) continue;
      int next = residue(sum + elems[i], modulus);
      if (sum_seen[next]) continue;
      return i;
    }
    return -1;
  };
  int start = 0;
  while (true) {
    int pick = try_extend(start);
    if (pick >= 0) {
      used[pick] = true;
      sum = residue(sum + elems[pick], modulus);
      sum_seen[sum] = true;
      order.push_back(elems[pick]);
      choice.push_back(pick);
      if (static_cast<int>(order.size()) == k) return order;
      start = 0;
      continue;
    }
    if (choice.empty()) return std::nullopt;
    int last = choice.back();
    choice.pop_back();
    order.pop_back();
    sum_seen[sum] = false;
    sum = residue(sum - elems[last], modulus);
    used[last] = false;
    start = last + 1;
  }
}

struct AlspachSweepReport {
  int modulus = 0;
  uint64_t subsets_checked = 0;
  std::vector<std::vector<int>> failures;  // subsets with no ordering (expected none)
};

// Exhaustive sweep over all nonempty subsets of Z_M \ {0}. jobs > 1 splits
// the bitmask range across threads; results merge deterministically.
inline AlspachSweepReport alspach_sweep(int modulus, int jobs = 1) {
  check_modulus(modulus);
  std::vector<int> universe;
  for (int i = 1; i <= (modulus - 1) / 2; ++i) {
    universe.push_back(i);
    universe.push_back(-i);
  }
  std::sort(universe.begin(), universe.end());
  const int n = static_cast<int>(universe.size());
  if (n > 30) throw parameter_error("sweep modulus too large for exhaustive enumeration");
  const uint64_t total = (uint64_t{1} << n) - 1;

  if (jobs < 1) jobs = 1;
  auto run_range = [&](uint64_t lo, uint64_t hi, std::vector<std::vector<int>>& fail) {
    std::vector<int> subset;
    for (uint64_t mask = lo; mask <= hi; ++mask) {
      subset.clear();
      for (int b = 0; b < n; ++b)
        if (mask & (uint64_t{1} << b)) subset.push_back(universe[b]);
      if (!alspach_check(modulus, subset)) fail.push_back(subset);
    }
  };

  AlspachSweepReport report;
  report.modulus = modulus;
  report.subsets_checked = total;
  if (jobs == 1) {
    run_range(1, total, report.failures);
  } else {
    std::vector<std::vector<std::vector<int>>> fails(jobs);
    std::vector<std::thread> threads;
    uint64_t chunk = total / jobs + 1;
    for (int j = 0; j < jobs; ++j) {
      uint64_t lo = 1 + chunk * j;
      uint64_t hi = std::min(total, chunk * (j + 1));
      if (lo > hi) continue;
      threads.emplace_back([&, lo, hi, j]() { run_range(lo, hi, fails[j]); });
    }
    for (auto& t : threads) t.join();
    for (auto& f : fails)
      for (auto& s : f) report.failures.push_back(std::move(s));
  }
  std::sort(report.failures.begin(), report.failures.end());
  return report;
}

// ---------------------------------------------------------------------------
// Ordering file format
//
//   row <i>: a1 a2 ... ak
//   col <j>: b1 b2 ... bk
//
// Indices are 1-based and must be contiguous from 1 within each kind.

struct OrderingFile {
  std::vector<std::vector<int>> row_sequences;
  std::vector<std::vector<int>> col_sequences;
};

inline OrderingFile parse_orderings(const std::string& text) {
  OrderingFile out;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  std::map<int, std::vector<int>> rows, cols;
  while (std::getline(is, line)) {
    ++line_no;
    auto tokens = detail::split_tokens(line);
    if (tokens.empty()) continue;
    if (tokens.size() < 3 || (tokens[0] != "row" && tokens[0] != "col")) {
      throw parse_error(line_no, "expected 'row <i>: ...' or 'col <j>: ...'");
    }
    std::string idx = tokens[1];
    if (idx.empty() || idx.back() != ':') throw parse_error(line_no, "expected '<index>:'");
    int index = detail::parse_int(idx.substr(0, idx.size() - 1), line_no);
    std::vector<int> seq;
    for (size_t i = 2; i < tokens.size(); ++i) seq.push_back(detail::parse_int(tokens[i], line_no));
    auto& target = tokens[0] == "row" ? rows : cols;
    if (!target.emplace(index, std::move(seq)).second) {
      throw parse_error(line_no, "duplicate " + tokens[0] + " index " + std::to_string(index));
    }
  }
  auto flatten = [&](std::map<int, std::vector<int>>& src, const char* kind) {
    std::vector<std::vector<int>> seqs;
    int expect = 1;
    for (auto& [i, seq] : src) {
      if (i != expect) {
        throw parse_error(0, std::string(kind) + " indices must be contiguous from 1");
      }
      ++expect;
      seqs.push_back(std::move(seq));
    }
    return seqs;
  };
  out.row_sequences = flatten(rows, "row");
  out.col_sequences = flatten(cols, "col");
  return out;
}

// Builds a SystemOrdering whose system is read off the sequences themselves.
inline SystemOrdering ordering_from_sequences(int modulus,
                                              const std::vector<std::vector<int>>& sequences) {
  if (sequences.empty()) throw domain_error("no sequences given");
  HeffterSystem sys{modulus, static_cast<int>(sequences.front().size()), {}};
  for (const auto& seq : sequences) {
    std::vector<int> part;
    for (int v : seq) part.push_back(canonicalize(v, modulus));
    sys.parts.push_back(std::move(part));
  }
  SystemOrdering om{std::move(sys), {}};
  for (const auto& seq : sequences) {
    std::vector<int> s;
    for (int v : seq) s.push_back(canonicalize(v, modulus));
    om.sequences.push_back(std::move(s));
  }
  if (auto problem = system_problem(om.system)) throw domain_error(*problem);
  check_ordering(om);
  return om;
}

// Builds the ordering against the array's row/column system; the sequences
// must order exactly the array's parts.
inline SystemOrdering ordering_for_rows(const HeffterArray& h,
                                        const std::vector<std::vector<int>>& sequences) {
  SystemOrdering om{row_system(h), {}};
  if (sequences.size() != om.system.parts.size()) {
    throw domain_error("expected one sequence per row");
  }
  for (const auto& seq : sequences) {
    std::vector<int> s;
    for (int v : seq) s.push_back(canonicalize(v, h.modulus()));
    om.sequences.push_back(std::move(s));
  }
  check_ordering(om);
  return om;
}

inline SystemOrdering ordering_for_cols(const HeffterArray& h,
                                        const std::vector<std::vector<int>>& sequences) {
  SystemOrdering om{col_system(h), {}};
  if (sequences.size() != om.system.parts.size()) {
    throw domain_error("expected one sequence per column");
  }
  for (const auto& seq : sequences) {
    std::vector<int> s;
    for (int v : seq) s.push_back(canonicalize(v, h.modulus()));
    om.sequences.push_back(std::move(s));
  }
  check_ordering(om);
  return om;
}

inline std::string format_orderings(const SystemOrdering& row_ordering,
                                    const SystemOrdering& col_ordering) {
  std::ostringstream os;
  for (size_t i = 0; i < row_ordering.sequences.size(); ++i) {
    os << "row " << i + 1 << ':';
    for (int v : row_ordering.sequences[i]) os << ' ' << v;
    os << '\n';
  }
  for (size_t i = 0; i < col_ordering.sequences.size(); ++i) {
    os << "col " << i + 1 << ':';
    for (int v : col_ordering.sequences[i]) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

}  // namespace heffter

#pragma once

// Bipartite biregular current graphs, plain and signed: construction from
// (weak) Heffter arrays, the current-graph axioms (KCL, unique currents and
// the signed variant), signature balance with an explicit negative-cycle
// witness, local switching, and the rotation induced by row/column
// orderings.
//
// Vertices are the rows then the columns: row i is vertex i, column j is
// vertex row_count + j, labeled R1..Rm and C1..Cn. Dart identity is
// (edge, direction), never the current; validators must run on graphs whose
// currents are broken.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "heffter/arrays.hpp"
#include "heffter/graph.hpp"
#include "heffter/orderings.hpp"

namespace heffter {

class CurrentGraph {
 public:
  struct Edge {
    int row;      // 0-based row vertex
    int col;      // 0-based column vertex
    int current;  // canonical current on the row->col dart
  };

  CurrentGraph(int row_count, int col_count, int modulus, std::vector<Edge> edges)
      : row_count_(row_count), col_count_(col_count), modulus_(modulus),
        edges_(std::move(edges)) {
    check_modulus(modulus_);
    if (row_count_ <= 0 || col_count_ <= 0) throw parameter_error("empty vertex side");
    for (auto& e : edges_) {
      if (e.row < 0 || e.row >= row_count_ || e.col < 0 || e.col >= col_count_) {
        throw parameter_error("edge endpoint out of range");
      }
      e.current = canonicalize(e.current, modulus_);
    }
  }

  int row_count() const { return row_count_; }
  int col_count() const { return col_count_; }
  int vertex_count() const { return row_count_ + col_count_; }
  int modulus() const { return modulus_; }
  const std::vector<Edge>& edges() const { return edges_; }

  int row_vertex(int r) const { return r; }
  int col_vertex(int c) const { return row_count_ + c; }
  bool is_row_vertex(int v) const { return v < row_count_; }

  std::string vertex_label(int v) const {
    return v < row_count_ ? "R" + std::to_string(v + 1)
                          : "C" + std::to_string(v - row_count_ + 1);
  }

  // Current on a dart: dart 2e runs row->col with the stored current, dart
  // 2e+1 is its reverse and carries the negated current.
  virtual int dart_current(int d) const {
    const Edge& e = edges_[d / 2];
    return d % 2 == 0 ? e.current : canonicalize(-static_cast<long long>(e.current), modulus_);
  }

  virtual ~CurrentGraph() = default;

  Graph skeleton() const {
    Graph g(vertex_count());
    for (const auto& e : edges_) g.add_edge(row_vertex(e.row), col_vertex(e.col));
    return g;
  }

 private:
  int row_count_, col_count_, modulus_;
  std::vector<Edge> edges_;
};

class SignedCurrentGraph : public CurrentGraph {
 public:
  SignedCurrentGraph(int row_count, int col_count, int modulus, std::vector<Edge> edges,
                     std::vector<bool> negative)
      : CurrentGraph(row_count, col_count, modulus, std::move(edges)),
        negative_(std::move(negative)) {
    if (negative_.size() != this->edges().size()) {
      throw parameter_error("one sign per edge required");
    }
  }

  const std::vector<bool>& negative() const { return negative_; }
  bool edge_negative(int e) const { return negative_[e]; }

  bool all_positive() const {
    return std::none_of(negative_.begin(), negative_.end(), [](bool b) { return b; });
  }

  // On a negative edge the reverse dart repeats the forward current.
  int dart_current(int d) const override {
    if (d % 2 == 0 || negative_[d / 2]) return edges()[d / 2].current;
    return canonicalize(-static_cast<long long>(edges()[d / 2].current), modulus());
  }

 private:
  std::vector<bool> negative_;
};

// ---------------------------------------------------------------------------
// Construction from arrays

// One edge per filled cell, current a_{i,j} on the row->col dart. The caller
// is expected to have validated h; the construction itself only needs the
// grid shape, so broken inputs can be built and then rejected by the checks.
inline CurrentGraph from_array(const HeffterArray& h) {
  std::vector<CurrentGraph::Edge> edges;
  for (int r = 0; r < h.rows(); ++r)
    for (int c = 0; c < h.cols(); ++c)
      if (h.cell(r, c)) edges.push_back({r, c, canonicalize(*h.cell(r, c), h.modulus())});
  return CurrentGraph(h.rows(), h.cols(), h.modulus(), std::move(edges));
}

// Weak cells with opposite row/column signs become negative edges: the
// row->col dart carries the row value, and the reverse dart repeats it
// instead of negating.
inline SignedCurrentGraph from_weak_array(const WeakHeffterArray& w) {
  std::vector<CurrentGraph::Edge> edges;
  std::vector<bool> negative;
  for (int r = 0; r < w.rows(); ++r) {
    for (int c = 0; c < w.cols(); ++c) {
      if (!w.cell(r, c)) continue;
      edges.push_back({r, c, canonicalize(w.cell(r, c)->row_value, w.modulus())});
      negative.push_back(w.cell(r, c)->weak());
    }
  }
  return SignedCurrentGraph(w.rows(), w.cols(), w.modulus(), std::move(edges),
                            std::move(negative));
}

// Reads the currents back into a grid; together with from_array this
// realizes the array/current-graph equivalence.
inline HeffterArray array_from_current_graph(const CurrentGraph& g) {
  const int m = g.row_count(), n = g.col_count();
  std::vector<std::optional<int>> cells(static_cast<size_t>(m) * n);
  std::vector<int> row_deg(m, 0), col_deg(n, 0);
  for (const auto& e : g.edges()) {
    auto& cell = cells[e.row * n + e.col];
    if (cell) throw domain_error("parallel edges cannot be read back into a grid");
    cell = e.current;
    ++row_deg[e.row];
    ++col_deg[e.col];
  }
  for (int r = 1; r < m; ++r)
    if (row_deg[r] != row_deg[0]) throw domain_error("row degrees are not uniform");
  for (int c = 1; c < n; ++c)
    if (col_deg[c] != col_deg[0]) throw domain_error("column degrees are not uniform");
  HeffterArray h(m, n, row_deg[0], col_deg[0], std::move(cells));
  if (h.modulus() != g.modulus()) {
    throw domain_error("graph modulus does not match 2ms+1 for its degrees");
  }
  return h;
}

// ---------------------------------------------------------------------------
// Axioms

// Kirchhoff's current law: at every vertex the outgoing dart currents sum to
// 0 mod M. Row vertices own the forward darts, column vertices the reverses.
inline bool check_kcl(const CurrentGraph& g) {
  std::vector<long long> sums(g.vertex_count(), 0);
  for (size_t e = 0; e < g.edges().size(); ++e) {
    sums[g.row_vertex(g.edges()[e].row)] += g.dart_current(static_cast<int>(2 * e));
    sums[g.col_vertex(g.edges()[e].col)] += g.dart_current(static_cast<int>(2 * e + 1));
  }
  for (long long s : sums) {
    if (canonicalize(s, g.modulus()) != 0) return false;
  }
  return true;
}

// Vertices where KCL fails, as labels; used for diagnostics.
inline std::vector<std::string> kcl_violations(const CurrentGraph& g) {
  std::vector<long long> sums(g.vertex_count(), 0);
  for (size_t e = 0; e < g.edges().size(); ++e) {
    sums[g.row_vertex(g.edges()[e].row)] += g.dart_current(static_cast<int>(2 * e));
    sums[g.col_vertex(g.edges()[e].col)] += g.dart_current(static_cast<int>(2 * e + 1));
  }
  std::vector<std::string> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (canonicalize(sums[v], g.modulus()) != 0) out.push_back(g.vertex_label(v));
  }
  return out;
}

// Unique currents: the dart currents are exactly Z_M \ {0}.
inline bool check_unique_currents(const CurrentGraph& g) {
  if (2 * static_cast<int>(g.edges().size()) != g.modulus() - 1) return false;
  std::set<int> seen;
  for (int d = 0; d < 2 * static_cast<int>(g.edges().size()); ++d) {
    int c = g.dart_current(d);
    if (c == 0 || !seen.insert(c).second) return false;
  }
  return true;
}

// Signed-unique currents: positive edges contribute each value of a +/- pair
// once, negative edges one value twice and the other never, with all edge
// supports distinct and every support used.
inline bool check_signed_unique_currents(const SignedCurrentGraph& g) {
  if (2 * static_cast<int>(g.edges().size()) != g.modulus() - 1) return false;
  std::set<int> supports;
  for (const auto& e : g.edges()) {
    if (e.current == 0) return false;
    if (!supports.insert(std::abs(e.current)).second) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Balance and switching

// A negative cycle as edge ids, if one exists. Balance is equivalent to a
// sign-consistent 2-coloring of every component.
inline std::optional<std::vector<int>> find_negative_cycle(const Graph& g,
                                                           const std::vector<bool>& negative) {
  if (negative.size() != g.edges.size()) throw parameter_error("one sign per edge required");
  std::vector<int> color(g.vertex_count, -1);
  std::vector<int> parent_edge(g.vertex_count, -1);
  std::vector<int> parent_vertex(g.vertex_count, -1);

  // Adjacency once.
  std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count);  // (neighbor, edge)
  for (int e = 0; e < g.edge_count(); ++e) {
    adj[g.edges[e].first].push_back({g.edges[e].second, e});
    adj[g.edges[e].second].push_back({g.edges[e].first, e});
  }

  for (int root = 0; root < g.vertex_count; ++root) {
    if (color[root] != -1) continue;
    color[root] = 0;
    std::vector<int> queue{root};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (auto [v, e] : adj[u]) {
        int want = color[u] ^ (negative[e] ? 1 : 0);
        if (color[v] == -1) {
          color[v] = want;
          parent_edge[v] = e;
          parent_vertex[v] = u;
          queue.push_back(v);
        } else if (color[v] != want) {
          // Tree paths from u and v to their meeting point, plus edge e.
          std::vector<int> pu{u}, pv{v};
          std::set<int> on_pu{u};
          for (int x = u; parent_vertex[x] != -1; x = parent_vertex[x]) {
            pu.push_back(parent_vertex[x]);
            on_pu.insert(parent_vertex[x]);
          }
          int meet = v;
          while (!on_pu.count(meet)) meet = parent_vertex[meet];
          std::vector<int> cycle{e};
          for (int x = u; x != meet; x = parent_vertex[x]) cycle.push_back(parent_edge[x]);
          for (int x = v; x != meet; x = parent_vertex[x]) cycle.push_back(parent_edge[x]);
          return cycle;
        }
      }
    }
  }
  return std::nullopt;
}

inline std::optional<std::vector<int>> find_negative_cycle(const SignedCurrentGraph& g) {
  std::vector<bool> neg(g.negative().begin(), g.negative().end());
  return find_negative_cycle(g.skeleton(), neg);
}

inline bool is_balanced(const SignedCurrentGraph& g) { return !find_negative_cycle(g); }

// Toggles the sign of every edge at v; dart currents follow the sign
// convention automatically.
inline SignedCurrentGraph local_switch(const SignedCurrentGraph& g, int vertex) {
  if (vertex < 0 || vertex >= g.vertex_count()) {
    throw domain_error("unknown vertex " + std::to_string(vertex));
  }
  std::vector<bool> negative = g.negative();
  for (size_t e = 0; e < g.edges().size(); ++e) {
    int r = g.row_vertex(g.edges()[e].row);
    int c = g.col_vertex(g.edges()[e].col);
    if (r == vertex || c == vertex) negative[e] = !negative[e];
  }
  return SignedCurrentGraph(g.row_count(), g.col_count(), g.modulus(),
                            g.edges(), std::move(negative));
}

// ---------------------------------------------------------------------------
// Rotations from orderings

namespace detail {

inline std::map<int, int> edge_by_current(const CurrentGraph& g) {
  std::map<int, int> out;
  for (size_t e = 0; e < g.edges().size(); ++e) {
    if (!out.emplace(g.edges()[e].current, static_cast<int>(e)).second) {
      throw domain_error("duplicate forward current " +
                         std::to_string(g.edges()[e].current));
    }
  }
  return out;
}

}  // namespace detail

// The rotation rho with rho(a) = omega_r(a) on the half-set of entries and
// rho(a) = -omega_c(-a) off it: row vertices order their forward darts by
// omega_r, column vertices order their reverse darts by omega_c.
inline RotationSystem rotation_from_orderings(const HeffterArray& h,
                                              const SystemOrdering& row_ordering,
                                              const SystemOrdering& col_ordering) {
  if (!validate(h).verdict) {
    throw precondition_error("rotation_from_orderings requires a valid Heffter array");
  }
  const int M = h.modulus();
  HeffterSystem rows = row_system(h);
  HeffterSystem cols = col_system(h);
  auto same_parts = [](const HeffterSystem& a, const HeffterSystem& b) {
    if (a.parts.size() != b.parts.size()) return false;
    for (size_t i = 0; i < a.parts.size(); ++i) {
      std::vector<int> x = a.parts[i], y = b.parts[i];
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      if (x != y) return false;
    }
    return true;
  };
  if (row_ordering.system.modulus != M || !same_parts(row_ordering.system, rows) ||
      col_ordering.system.modulus != M || !same_parts(col_ordering.system, cols)) {
    throw domain_error("orderings are not over the array's row/column systems");
  }
  check_ordering(row_ordering);
  check_ordering(col_ordering);

  CurrentGraph g = from_array(h);
  std::map<int, int> edge_of = detail::edge_by_current(g);

  RotationSystem rho;
  rho.at.resize(g.vertex_count());
  for (int r = 0; r < h.rows(); ++r) {
    for (int a : row_ordering.sequences[r]) {
      rho.at[g.row_vertex(r)].push_back(2 * edge_of.at(canonicalize(a, M)));
    }
  }
  for (int c = 0; c < h.cols(); ++c) {
    for (int a : col_ordering.sequences[c]) {
      rho.at[g.col_vertex(c)].push_back(2 * edge_of.at(canonicalize(a, M)) + 1);
    }
  }
  return rho;
}

// Weak analogue: row sequences order the row values, column sequences the
// column values; the column dart for value a is the reverse dart of the edge
// whose column value is a.
inline RotationSystem weak_rotation_from_orderings(const WeakHeffterArray& w,
                                                   const SystemOrdering& row_ordering,
                                                   const SystemOrdering& col_ordering) {
  const int M = w.modulus();
  SignedCurrentGraph g = from_weak_array(w);

  std::map<int, int> edge_of_row, edge_of_col;
  {
    int e = 0;
    for (int r = 0; r < w.rows(); ++r) {
      for (int c = 0; c < w.cols(); ++c) {
        if (!w.cell(r, c)) continue;
        if (!edge_of_row.emplace(canonicalize(w.cell(r, c)->row_value, M), e).second ||
            !edge_of_col.emplace(canonicalize(w.cell(r, c)->col_value, M), e).second) {
          throw domain_error("duplicate cell value; weak array must have distinct supports");
        }
        ++e;
      }
    }
  }
  if (row_ordering.sequences.size() != static_cast<size_t>(w.rows()) ||
      col_ordering.sequences.size() != static_cast<size_t>(w.cols())) {
    throw domain_error("orderings do not match the array's shape");
  }

  RotationSystem rho;
  rho.at.resize(g.vertex_count());
  for (int r = 0; r < w.rows(); ++r) {
    for (int a : row_ordering.sequences[r]) {
      auto it = edge_of_row.find(canonicalize(a, M));
      if (it == edge_of_row.end() || g.edges()[it->second].row != r) {
        throw domain_error("row ordering names a value not in its row");
      }
      rho.at[g.row_vertex(r)].push_back(2 * it->second);
    }
  }
  for (int c = 0; c < w.cols(); ++c) {
    for (int a : col_ordering.sequences[c]) {
      auto it = edge_of_col.find(canonicalize(a, M));
      if (it == edge_of_col.end() || g.edges()[it->second].col != c) {
        throw domain_error("column ordering names a value not in its column");
      }
      rho.at[g.col_vertex(c)].push_back(2 * it->second + 1);
    }
  }
  return rho;
}

// ---------------------------------------------------------------------------
// Graph dump format
//
//   current-graph <m> <n> <M>
//   edge <Ri> <Cj> <current> <sign>
//
// For plain graphs every sign is '+'.

inline std::string format_current_graph(const SignedCurrentGraph& g) {
  std::ostringstream os;
  os << "current-graph " << g.row_count() << ' ' << g.col_count() << ' ' << g.modulus() << '\n';
  for (size_t e = 0; e < g.edges().size(); ++e) {
    const auto& edge = g.edges()[e];
    os << "edge R" << edge.row + 1 << " C" << edge.col + 1 << ' ' << edge.current << ' '
       << (g.edge_negative(static_cast<int>(e)) ? '-' : '+') << '\n';
  }
  return os.str();
}

inline std::string format_current_graph(const CurrentGraph& g) {
  std::vector<bool> neg(g.edges().size(), false);
  return format_current_graph(
      SignedCurrentGraph(g.row_count(), g.col_count(), g.modulus(), g.edges(), neg));
}

inline SignedCurrentGraph parse_current_graph(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  int m = 0, n = 0, M = 0;
  std::vector<CurrentGraph::Edge> edges;
  std::vector<bool> negative;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++line_no;
    auto tokens = detail::split_tokens(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      if (tokens.size() != 4 || tokens[0] != "current-graph") {
        throw parse_error(line_no, "expected header 'current-graph <m> <n> <M>'");
      }
      m = detail::parse_int(tokens[1], line_no);
      n = detail::parse_int(tokens[2], line_no);
      M = detail::parse_int(tokens[3], line_no);
      have_header = true;
      continue;
    }
    if (tokens.size() != 5 || tokens[0] != "edge") {
      throw parse_error(line_no, "expected 'edge <Ri> <Cj> <current> <sign>'");
    }
    if (tokens[1].size() < 2 || tokens[1][0] != 'R' || tokens[2].size() < 2 ||
        tokens[2][0] != 'C') {
      throw parse_error(line_no, "edge endpoints must look like R<i> and C<j>");
    }
    int r = detail::parse_int(tokens[1].substr(1), line_no) - 1;
    int c = detail::parse_int(tokens[2].substr(1), line_no) - 1;
    int current = detail::parse_int(tokens[3], line_no);
    if (tokens[4] != "+" && tokens[4] != "-") {
      throw parse_error(line_no, "sign must be '+' or '-'");
    }
    edges.push_back({r, c, current});
    negative.push_back(tokens[4] == "-");
  }
  if (!have_header) throw parse_error(1, "missing 'current-graph' header");
  return SignedCurrentGraph(m, n, M, std::move(edges), std::move(negative));
}

}  // namespace heffter

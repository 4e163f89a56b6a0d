#pragma once

// Small undirected multigraph with explicit darts, local rotations, and the
// spanning-tree enumeration used by the monofaciality checks. Dart 2e is
// edge e read tail-to-head, dart 2e+1 the reverse.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "heffter/algebra.hpp"

namespace heffter {

struct Graph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;

  explicit Graph(int vertices = 0) : vertex_count(vertices) {
    if (vertices < 0) throw parameter_error("negative vertex count");
  }

  int add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      throw parameter_error("edge endpoint out of range");
    }
    if (u == v) throw parameter_error("loops are not supported");
    edges.emplace_back(u, v);
    return static_cast<int>(edges.size()) - 1;
  }

  int edge_count() const { return static_cast<int>(edges.size()); }
  int dart_count() const { return 2 * edge_count(); }

  int dart_tail(int d) const { return d % 2 == 0 ? edges[d / 2].first : edges[d / 2].second; }
  int dart_head(int d) const { return d % 2 == 0 ? edges[d / 2].second : edges[d / 2].first; }
  static int reverse(int d) { return d ^ 1; }

  // Darts leaving v, in edge order.
  std::vector<int> darts_out(int v) const {
    std::vector<int> out;
    for (int e = 0; e < edge_count(); ++e) {
      if (edges[e].first == v) out.push_back(2 * e);
      if (edges[e].second == v) out.push_back(2 * e + 1);
    }
    return out;
  }

  int degree(int v) const { return static_cast<int>(darts_out(v).size()); }

  bool connected() const {
    if (vertex_count == 0) return true;
    std::vector<char> seen(vertex_count, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& [a, b] : edges) {
        int w = -1;
        if (a == v) w = b;
        else if (b == v) w = a;
        if (w >= 0 && !seen[w]) {
          seen[w] = 1;
          ++visited;
          stack.push_back(w);
        }
      }
    }
    return visited == vertex_count;
  }
};

// One cyclic sequence of outgoing darts per vertex.
struct RotationSystem {
  std::vector<std::vector<int>> at;
};

// Throws unless rho lists every dart of g exactly once, each at its tail.
inline void check_rotation(const Graph& g, const RotationSystem& rho) {
  if (static_cast<int>(rho.at.size()) != g.vertex_count) {
    throw domain_error("rotation has " + std::to_string(rho.at.size()) + " vertices, graph has " +
                       std::to_string(g.vertex_count));
  }
  std::vector<char> seen(g.dart_count(), 0);
  for (int v = 0; v < g.vertex_count; ++v) {
    for (int d : rho.at[v]) {
      if (d < 0 || d >= g.dart_count()) throw domain_error("rotation names an unknown dart");
      if (g.dart_tail(d) != v) throw domain_error("dart listed at the wrong vertex");
      if (seen[d]) throw domain_error("dart listed twice in rotation");
      seen[d] = 1;
    }
  }
  for (char s : seen) {
    if (!s) throw domain_error("rotation does not cover every dart");
  }
}

// Successor map on darts: next[d] is the dart after d in the rotation at its
// tail. Face tracing composes this with dart reversal.
inline std::vector<int> rotation_successors(const Graph& g, const RotationSystem& rho) {
  check_rotation(g, rho);
  std::vector<int> next(g.dart_count(), -1);
  for (const auto& cycle : rho.at) {
    for (size_t i = 0; i < cycle.size(); ++i) {
      next[cycle[i]] = cycle[(i + 1) % cycle.size()];
    }
  }
  return next;
}

// Rotation listing darts in natural (edge-index) order at each vertex.
inline RotationSystem natural_rotation(const Graph& g) {
  RotationSystem rho;
  rho.at.resize(g.vertex_count);
  for (int v = 0; v < g.vertex_count; ++v) rho.at[v] = g.darts_out(v);
  return rho;
}

namespace detail {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }

  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  // Returns false if already joined.
  bool unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return false;
    parent[ra] = rb;
    return true;
  }
};

}  // namespace detail

// Calls fn with each spanning tree, given as sorted edge indices, in
// lexicographic order; stops early when fn returns true. Returns whether fn
// ever did. Intended for desk-scale graphs (the subset walk is C(E, V-1)).
template <typename Fn>
bool for_each_spanning_tree(const Graph& g, Fn&& fn) {
  if (!g.connected()) throw domain_error("graph is not connected");
  const int need = g.vertex_count - 1;
  const int E = g.edge_count();
  if (need == 0) {
    std::vector<int> empty;
    return fn(empty);
  }
  if (need > E) return false;

  std::vector<int> pick(need);
  for (int i = 0; i < need; ++i) pick[i] = i;
  while (true) {
    detail::UnionFind uf(g.vertex_count);
    bool acyclic = true;
    for (int e : pick) {
      if (!uf.unite(g.edges[e].first, g.edges[e].second)) {
        acyclic = false;
        break;
      }
    }
    if (acyclic) {  // V-1 acyclic edges always span
      if (fn(pick)) return true;
    }
    // Next combination.
    int i = need - 1;
    while (i >= 0 && pick[i] == E - need + i) --i;
    if (i < 0) return false;
    ++pick[i];
    for (int j = i + 1; j < need; ++j) pick[j] = pick[j - 1] + 1;
  }
}

// Connected components of a subgraph on all vertices of g using only the
// given edges; returns per-component edge lists.
inline std::vector<std::vector<int>> edge_components(const Graph& g,
                                                     const std::vector<int>& edge_ids) {
  detail::UnionFind uf(g.vertex_count);
  for (int e : edge_ids) uf.unite(g.edges[e].first, g.edges[e].second);
  std::vector<std::vector<int>> by_root(g.vertex_count);
  for (int e : edge_ids) by_root[uf.find(g.edges[e].first)].push_back(e);
  std::vector<std::vector<int>> out;
  for (auto& c : by_root)
    if (!c.empty()) out.push_back(std::move(c));
  return out;
}

}  // namespace heffter

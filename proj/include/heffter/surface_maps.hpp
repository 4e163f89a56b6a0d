#pragma once

// Face tracing for embedded graphs. Orientable faces are the orbits of
// rho composed with dart reversal. Signed graphs are traced over
// (dart, sense) states: the walk leaves along the rotation successor of the
// reversed dart while the sense is anticlockwise and along the predecessor
// while clockwise, and the sense flips on negative edges. Each geometric
// face appears as a mirror pair of state orbits; the trace reports one
// representative per pair.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "heffter/current_graphs.hpp"
#include "heffter/graph.hpp"

namespace heffter {

struct FaceTrace {
  std::vector<std::vector<int>> faces;  // dart ids in traversal order
  bool orientable = true;
};

inline FaceTrace trace_faces(const Graph& g, const RotationSystem& rho) {
  std::vector<int> next = rotation_successors(g, rho);
  FaceTrace trace;
  trace.orientable = true;
  std::vector<char> visited(g.dart_count(), 0);
  for (int start = 0; start < g.dart_count(); ++start) {
    if (visited[start]) continue;
    std::vector<int> face;
    int d = start;
    do {
      visited[d] = 1;
      face.push_back(d);
      d = next[Graph::reverse(d)];
    } while (d != start);
    trace.faces.push_back(std::move(face));
  }
  return trace;
}

inline FaceTrace trace_faces(const CurrentGraph& g, const RotationSystem& rho) {
  return trace_faces(g.skeleton(), rho);
}

inline FaceTrace trace_faces_signed(const Graph& g, const std::vector<bool>& negative,
                                    const RotationSystem& rho) {
  if (negative.size() != g.edges.size()) throw parameter_error("one sign per edge required");
  std::vector<int> next = rotation_successors(g, rho);
  std::vector<int> prev(g.dart_count(), -1);
  for (int d = 0; d < g.dart_count(); ++d) prev[next[d]] = d;

  // State 2d+s: traversing dart d with sense s (0 anticlockwise, 1 clockwise).
  auto step = [&](int state) {
    int d = state / 2, s = state % 2;
    int s2 = s ^ (negative[d / 2] ? 1 : 0);
    int nd = s2 == 0 ? next[Graph::reverse(d)] : prev[Graph::reverse(d)];
    return 2 * nd + s2;
  };
  // The same face walked backwards, with senses adjusted for the flip that
  // happens while traversing d.
  auto mirror = [&](int state) {
    int d = state / 2, s = state % 2;
    int s2 = s ^ (negative[d / 2] ? 1 : 0);
    return 2 * Graph::reverse(d) + (s2 ^ 1);
  };

  const int states = 2 * g.dart_count();
  std::vector<int> orbit_of(states, -1);
  std::vector<std::vector<int>> orbits;
  for (int start = 0; start < states; ++start) {
    if (orbit_of[start] != -1) continue;
    std::vector<int> orbit;
    int st = start;
    do {
      orbit_of[st] = static_cast<int>(orbits.size());
      orbit.push_back(st);
      st = step(st);
    } while (st != start);
    orbits.push_back(std::move(orbit));
  }

  FaceTrace trace;
  trace.orientable = !find_negative_cycle(g, negative).has_value();
  std::vector<char> reported(orbits.size(), 0);
  for (size_t i = 0; i < orbits.size(); ++i) {
    if (reported[i]) continue;
    int m = orbit_of[mirror(orbits[i].front())];
    if (m == static_cast<int>(i)) {
      throw inconsistency_error("face orbit coincides with its own mirror");
    }
    reported[i] = 1;
    reported[m] = 1;
    std::vector<int> face;
    face.reserve(orbits[i].size());
    for (int st : orbits[i]) face.push_back(st / 2);
    trace.faces.push_back(std::move(face));
  }
  return trace;
}

inline FaceTrace trace_faces_signed(const SignedCurrentGraph& g, const RotationSystem& rho) {
  std::vector<bool> neg(g.negative().begin(), g.negative().end());
  return trace_faces_signed(g.skeleton(), neg, rho);
}

inline bool is_monofacial(const FaceTrace& trace) { return trace.faces.size() == 1; }

// Currents along a face, for golden comparisons and dumps.
inline std::vector<int> face_currents(const CurrentGraph& g, const std::vector<int>& face) {
  std::vector<int> out;
  out.reserve(face.size());
  for (int d : face) out.push_back(g.dart_current(d));
  return out;
}

// ---------------------------------------------------------------------------
// Euler summaries

struct EmbeddingSummary {
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  bool orientable = true;
  int genus = 0;  // crosscap count when nonorientable
};

inline EmbeddingSummary euler_summary(int vertices, int edges, const FaceTrace& trace) {
  const int faces = static_cast<int>(trace.faces.size());
  const int chi = vertices - edges + faces;
  if (trace.orientable) {
    if ((2 - chi) % 2 != 0) {
      throw inconsistency_error("Euler characteristic " + std::to_string(chi) +
                                " is odd for an orientable trace");
    }
    int genus = (2 - chi) / 2;
    if (genus < 0) throw inconsistency_error("negative genus from Euler's formula");
    return {vertices, edges, faces, true, genus};
  }
  int crosscaps = 2 - chi;
  if (crosscaps < 1) {
    throw inconsistency_error("nonorientable trace with Euler characteristic " +
                              std::to_string(chi));
  }
  return {vertices, edges, faces, false, crosscaps};
}

// ---------------------------------------------------------------------------
// Local simplicity

// A local rotation with currents (k_1, ..., k_d) is simple iff the partial
// sums are pairwise distinct mod M; KCL makes the last sum 0.
inline bool local_rotation_simple(const std::vector<int>& currents, int modulus) {
  return is_simple(currents, modulus);
}

inline bool local_rotation_simple(const CurrentGraph& g, const RotationSystem& rho, int vertex) {
  std::vector<int> currents;
  for (int d : rho.at[vertex]) currents.push_back(g.dart_current(d));
  return local_rotation_simple(currents, g.modulus());
}

// ---------------------------------------------------------------------------
// Existence of monofacial embeddings

struct XuongResult {
  bool exists = false;
  std::optional<std::vector<int>> tree;  // witness spanning tree edge ids
};

// A monofacial orientable embedding exists iff some spanning tree leaves
// every cotree component with an even number of edges.
inline XuongResult xuong_monofacial_exists(const Graph& g) {
  if (!g.connected()) throw domain_error("graph is not connected");
  XuongResult result;
  for_each_spanning_tree(g, [&](const std::vector<int>& tree) {
    std::vector<char> in_tree(g.edge_count(), 0);
    for (int e : tree) in_tree[e] = 1;
    std::vector<int> cotree;
    for (int e = 0; e < g.edge_count(); ++e)
      if (!in_tree[e]) cotree.push_back(e);
    for (const auto& comp : edge_components(g, cotree)) {
      if (comp.size() % 2 != 0) return false;
    }
    result.exists = true;
    result.tree = tree;
    return true;
  });
  return result;
}

namespace detail {

// Edge signs after switching so that the given spanning tree is all
// positive; the switch class is determined by potentials along the tree.
inline std::vector<bool> switch_tree_positive(const Graph& g, const std::vector<bool>& negative,
                                              const std::vector<int>& tree) {
  std::vector<char> potential(g.vertex_count, 0), known(g.vertex_count, 0);
  std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count);
  for (int e : tree) {
    adj[g.edges[e].first].push_back({g.edges[e].second, e});
    adj[g.edges[e].second].push_back({g.edges[e].first, e});
  }
  for (int root = 0; root < g.vertex_count; ++root) {
    if (known[root]) continue;
    known[root] = 1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [v, e] : adj[u]) {
        if (known[v]) continue;
        known[v] = 1;
        potential[v] = potential[u] ^ (negative[e] ? 1 : 0);
        stack.push_back(v);
      }
    }
  }
  std::vector<bool> switched(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    switched[e] =
        negative[e] ^ (potential[g.edges[e].first] != 0) ^ (potential[g.edges[e].second] != 0);
  }
  return switched;
}

// A cotree component is odd if its edge count is odd and every negative
// edge in it is a bridge splitting it into two parts of odd edge count.
inline bool component_is_odd(const Graph& g, const std::vector<int>& comp,
                             const std::vector<bool>& negative) {
  if (comp.size() % 2 == 0) return false;
  for (int e : comp) {
    if (!negative[e]) continue;
    std::vector<int> rest;
    for (int f : comp)
      if (f != e) rest.push_back(f);
    UnionFind uf(g.vertex_count);
    for (int f : rest) uf.unite(g.edges[f].first, g.edges[f].second);
    if (uf.find(g.edges[e].first) == uf.find(g.edges[e].second)) return false;  // not a bridge
    int side = 0;
    for (int f : rest) {
      if (uf.find(g.edges[f].first) == uf.find(g.edges[e].first)) ++side;
    }
    int other = static_cast<int>(rest.size()) - side;
    if (side % 2 == 0 || other % 2 == 0) return false;
  }
  return true;
}

}  // namespace detail

// A monofacial signed embedding exists iff some spanning tree, switched
// positive, leaves no odd cotree component.
inline bool signed_monofacial_exists(const Graph& g, const std::vector<bool>& negative) {
  if (!g.connected()) throw domain_error("graph is not connected");
  if (negative.size() != g.edges.size()) throw parameter_error("one sign per edge required");
  return for_each_spanning_tree(g, [&](const std::vector<int>& tree) {
    std::vector<bool> switched = detail::switch_tree_positive(g, negative, tree);
    std::vector<char> in_tree(g.edge_count(), 0);
    for (int e : tree) in_tree[e] = 1;
    std::vector<int> cotree;
    for (int e = 0; e < g.edge_count(); ++e)
      if (!in_tree[e]) cotree.push_back(e);
    for (const auto& comp : edge_components(g, cotree)) {
      if (detail::component_is_odd(g, comp, switched)) return false;
    }
    return true;
  });
}

inline bool signed_monofacial_exists(const SignedCurrentGraph& g) {
  std::vector<bool> neg(g.negative().begin(), g.negative().end());
  return signed_monofacial_exists(g.skeleton(), neg);
}

// ---------------------------------------------------------------------------
// Face dump: darts print as signed currents when unique currents hold,
// otherwise as edge ids with direction.

inline std::string format_faces(const CurrentGraph& g, const FaceTrace& trace) {
  const bool by_current = check_unique_currents(g);
  std::ostringstream os;
  for (size_t i = 0; i < trace.faces.size(); ++i) {
    const auto& face = trace.faces[i];
    os << "face " << i + 1 << " length " << face.size() << ':';
    for (int d : face) {
      if (by_current) {
        os << ' ' << g.dart_current(d);
      } else {
        os << " e" << d / 2 + 1 << (d % 2 == 0 ? '+' : '-');
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace heffter

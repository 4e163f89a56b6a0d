#pragma once

// The derived embedding of K_{2ms+1} from a monofacial current graph: the
// currents along the single face become the rotation at vertex 0 and are
// translated across Z_M. Faces come from the quick partial-sum method: each
// current-graph vertex with local sums (s_1, ..., s_k) contributes the M
// translates of (0, s_1, ..., s_{k-1}), colored by the vertex side. The
// verifier re-checks coverage, face sizes, pinch-freeness and simplicity
// without trusting the constructor.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "heffter/cycle_systems.hpp"
#include "heffter/current_graphs.hpp"
#include "heffter/surface_maps.hpp"

namespace heffter {

struct ColoredFace {
  char color = 'A';  // 'A' row-side, 'B' column-side
  std::vector<int> vertices;
};

struct FaceFamily {
  char color = 'A';
  int source_vertex = 0;  // current-graph vertex the family comes from
  std::vector<int> base;  // (0, s_1, ..., s_{k-1})
};

struct DerivedEmbedding {
  int modulus = 0;
  bool orientable = true;
  int row_face_size = 0;  // s
  int col_face_size = 0;  // t
  std::vector<int> rotation_at_zero;  // currents along the single face
  std::vector<FaceFamily> families;
  EmbeddingSummary summary;

  std::vector<ColoredFace> faces() const {
    std::vector<ColoredFace> out;
    out.reserve(static_cast<size_t>(modulus) * families.size());
    for (const auto& fam : families) {
      for (int i = 0; i < modulus; ++i) {
        ColoredFace f;
        f.color = fam.color;
        f.vertices.reserve(fam.base.size());
        for (int v : fam.base) {
          f.vertices.push_back(canonicalize(static_cast<long long>(v) + i, modulus));
        }
        out.push_back(std::move(f));
      }
    }
    return out;
  }
};

namespace detail {

inline void check_biregular(const CurrentGraph& g, int& s, int& t) {
  std::vector<int> row_deg(g.row_count(), 0), col_deg(g.col_count(), 0);
  for (const auto& e : g.edges()) {
    ++row_deg[e.row];
    ++col_deg[e.col];
  }
  for (int d : row_deg) {
    if (d != row_deg[0]) throw precondition_error("derive requires a biregular graph");
  }
  for (int d : col_deg) {
    if (d != col_deg[0]) throw precondition_error("derive requires a biregular graph");
  }
  s = row_deg.empty() ? 0 : row_deg[0];
  t = col_deg.empty() ? 0 : col_deg[0];
}

inline std::vector<FaceFamily> face_families(const CurrentGraph& g, const RotationSystem& rho) {
  std::vector<FaceFamily> families;
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> currents;
    for (int d : rho.at[v]) currents.push_back(g.dart_current(d));
    auto sums = partial_sums(currents, g.modulus());
    FaceFamily fam;
    fam.color = g.is_row_vertex(v) ? 'A' : 'B';
    fam.source_vertex = v;
    fam.base.push_back(0);
    for (size_t i = 0; i + 1 < sums.size(); ++i) fam.base.push_back(sums[i]);
    families.push_back(std::move(fam));
  }
  return families;
}

}  // namespace detail

// Derived orientable embedding; refuses input violating any current-graph
// axiom, naming the failing one.
inline DerivedEmbedding derive(const CurrentGraph& g, const RotationSystem& rho) {
  if (!check_kcl(g)) throw precondition_error("axiom 1 (KCL) fails");
  if (!check_unique_currents(g)) throw precondition_error("axiom 2 (unique currents) fails");
  FaceTrace trace = trace_faces(g, rho);
  if (!is_monofacial(trace)) {
    throw precondition_error("axiom 3 (monofacial) fails: " +
                             std::to_string(trace.faces.size()) + " faces");
  }
  DerivedEmbedding d;
  d.modulus = g.modulus();
  d.orientable = true;
  detail::check_biregular(g, d.row_face_size, d.col_face_size);
  d.rotation_at_zero = face_currents(g, trace.faces.front());
  d.families = detail::face_families(g, rho);

  const int M = d.modulus;
  FaceTrace counted;
  counted.orientable = true;
  counted.faces.resize(static_cast<size_t>(M) * d.families.size());
  d.summary = euler_summary(M, M * (M - 1) / 2, counted);
  return d;
}

// Derived nonorientable embedding from a signed current graph; balanced
// signatures are refused since they would embed orientably.
inline DerivedEmbedding derive_signed(const SignedCurrentGraph& g, const RotationSystem& rho) {
  if (!check_kcl(g)) throw precondition_error("axiom 1 (signed KCL) fails");
  if (!check_signed_unique_currents(g)) {
    throw precondition_error("axiom 2 (signed-unique currents) fails");
  }
  if (is_balanced(g)) {
    throw precondition_error("signature is balanced; the derived surface would be orientable");
  }
  FaceTrace trace = trace_faces_signed(g, rho);
  if (!is_monofacial(trace)) {
    throw precondition_error("axiom 3 (monofacial) fails: " +
                             std::to_string(trace.faces.size()) + " faces");
  }
  DerivedEmbedding d;
  d.modulus = g.modulus();
  d.orientable = false;
  detail::check_biregular(g, d.row_face_size, d.col_face_size);
  d.rotation_at_zero = face_currents(g, trace.faces.front());
  d.families = detail::face_families(g, rho);

  const int M = d.modulus;
  FaceTrace counted;
  counted.orientable = false;
  counted.faces.resize(static_cast<size_t>(M) * d.families.size());
  d.summary = euler_summary(M, M * (M - 1) / 2, counted);
  return d;
}

// ---------------------------------------------------------------------------
// Verification

// A face-2-colored face list for K_M; what certificates carry.
struct Biembedding {
  int modulus = 0;
  int row_face_size = 0;
  int col_face_size = 0;
  bool orientable = true;
  int genus = 0;  // crosscap count when nonorientable
  std::vector<ColoredFace> faces;
};

inline Biembedding to_biembedding(const DerivedEmbedding& d) {
  return Biembedding{d.modulus, d.row_face_size, d.col_face_size,
                     d.orientable, d.summary.genus, d.faces()};
}

struct BiembeddingReport {
  bool verdict = true;
  std::vector<Violation> violations;
  bool faces_simple = true;  // reported separately from the verdict

  void add(std::string kind, std::string location, std::string detail) {
    verdict = false;
    violations.push_back({std::move(kind), std::move(location), std::move(detail)});
  }
};

// Checks that each color class covers every edge of K_M exactly once, that
// color-A faces have the row size and color-B faces the column size, that
// the faces meet each vertex in a single cyclic corner order (no pinch
// points), and — separately — that every face is a simple cycle.
inline BiembeddingReport verify_biembedding(const Biembedding& b) {
  BiembeddingReport report;
  const int M = b.modulus;
  check_modulus(M);

  // Face sizes per color.
  for (size_t i = 0; i < b.faces.size(); ++i) {
    const auto& f = b.faces[i];
    int want = f.color == 'A' ? b.row_face_size : b.col_face_size;
    if (f.color != 'A' && f.color != 'B') {
      report.add("face-color", "face " + std::to_string(i + 1), "unknown color");
      continue;
    }
    if (static_cast<int>(f.vertices.size()) != want) {
      report.add("face-size", "face " + std::to_string(i + 1),
                 "length " + std::to_string(f.vertices.size()) + ", expected " +
                     std::to_string(want));
    }
  }

  // Edge coverage, one tally per color.
  for (char color : {'A', 'B'}) {
    std::vector<int> count(static_cast<size_t>(M) * M, 0);
    bool loops = false;
    for (const auto& f : b.faces) {
      if (f.color != color) continue;
      const int k = static_cast<int>(f.vertices.size());
      for (int j = 0; j < k; ++j) {
        int u = residue(f.vertices[j], M);
        int v = residue(f.vertices[(j + 1) % k], M);
        if (u == v) {
          loops = true;
          continue;
        }
        ++count[static_cast<size_t>(std::min(u, v)) * M + std::max(u, v)];
      }
    }
    if (loops) {
      report.add("face-loop", std::string("color ") + color, "face repeats a vertex consecutively");
    }
    long long missing = 0, repeated = 0;
    for (int u = 0; u < M; ++u) {
      for (int v = u + 1; v < M; ++v) {
        int c = count[static_cast<size_t>(u) * M + v];
        if (c == 0) ++missing;
        if (c > 1) ++repeated;
      }
    }
    if (missing || repeated) {
      report.add("edge-coverage", std::string("color ") + color,
                 std::to_string(missing) + " edges uncovered, " + std::to_string(repeated) +
                     " covered more than once");
    }
  }

  // Pinch points: at every vertex the corners (previous, next neighbor in a
  // face walk) must chain into one cycle through all M-1 neighbors.
  if (report.verdict) {
    std::vector<std::vector<std::pair<int, int>>> corners(M);
    for (const auto& f : b.faces) {
      const int k = static_cast<int>(f.vertices.size());
      for (int j = 0; j < k; ++j) {
        int u = residue(f.vertices[(j - 1 + k) % k], M);
        int v = residue(f.vertices[j], M);
        int w = residue(f.vertices[(j + 1) % k], M);
        corners[v].push_back({u, w});
      }
    }
    for (int v = 0; v < M && report.verdict; ++v) {
      // Corner multigraph on the neighbors of v: single cycle iff connected
      // and 2-regular with M-1 corners.
      std::vector<int> degree(M, 0);
      detail::UnionFind uf(M);
      if (static_cast<int>(corners[v].size()) != M - 1) {
        report.add("pinch", "vertex " + std::to_string(v),
                   std::to_string(corners[v].size()) + " corners, expected " +
                       std::to_string(M - 1));
        break;
      }
      for (auto [u, w] : corners[v]) {
        ++degree[u];
        ++degree[w];
        uf.unite(u, w);
      }
      int root = -1;
      for (int u = 0; u < M; ++u) {
        if (u == v) continue;
        if (degree[u] != 2) {
          report.add("pinch", "vertex " + std::to_string(v),
                     "neighbor " + std::to_string(u) + " appears in " +
                         std::to_string(degree[u]) + " corners");
          break;
        }
        if (root == -1) root = uf.find(u);
        else if (uf.find(u) != root) {
          report.add("pinch", "vertex " + std::to_string(v),
                     "corners split into several cycles");
          break;
        }
      }
    }
  }

  for (const auto& f : b.faces) {
    std::vector<int> v;
    for (int x : f.vertices) v.push_back(residue(x, M));
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
      report.faces_simple = false;
      break;
    }
  }
  return report;
}

inline BiembeddingReport verify_biembedding(const DerivedEmbedding& d, int s, int t) {
  Biembedding b = to_biembedding(d);
  b.row_face_size = s;
  b.col_face_size = t;
  return verify_biembedding(b);
}

// ---------------------------------------------------------------------------
// Cycle-system extraction

// The two color classes as edge decompositions of K_M; when all faces are
// simple these are the s- and t-cycle systems, and they coincide with the
// developments of the row and column orderings.
inline std::pair<EdgeDecomposition, EdgeDecomposition> extract_cycle_systems(
    const DerivedEmbedding& d) {
  EdgeDecomposition rows{d.modulus, {}}, cols{d.modulus, {}};
  for (const auto& fam : d.families) {
    (fam.color == 'A' ? rows : cols).bases.push_back(fam.base);
  }
  return {std::move(rows), std::move(cols)};
}

// ---------------------------------------------------------------------------
// Certificate format
//
//   biembedding M=<M> s=<s> t=<t> orientable=<0|1> genus=<g>|crosscaps=<c>
//   A v0 v1 ... v_{s-1}
//   B v0 v1 ... v_{t-1}
//   ...

inline std::string format_certificate(const Biembedding& b) {
  std::ostringstream os;
  os << "biembedding M=" << b.modulus << " s=" << b.row_face_size << " t=" << b.col_face_size
     << " orientable=" << (b.orientable ? 1 : 0)
     << (b.orientable ? " genus=" : " crosscaps=") << b.genus << '\n';
  for (const auto& f : b.faces) {
    os << f.color;
    for (int v : f.vertices) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

inline std::string format_certificate(const DerivedEmbedding& d) {
  return format_certificate(to_biembedding(d));
}

inline Biembedding parse_certificate(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  Biembedding b;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++line_no;
    auto tokens = detail::split_tokens(line);
    if (tokens.empty()) continue;
    if (!have_header) {
      if (tokens.size() != 6 || tokens[0] != "biembedding") {
        throw parse_error(line_no, "expected 'biembedding M=... s=... t=... orientable=... "
                                   "genus=...|crosscaps=...'");
      }
      auto field = [&](const std::string& tok, const std::string& key) {
        if (tok.rfind(key + "=", 0) != 0) {
          throw parse_error(line_no, "expected '" + key + "=<value>', got '" + tok + "'");
        }
        return detail::parse_int(tok.substr(key.size() + 1), line_no);
      };
      b.modulus = field(tokens[1], "M");
      b.row_face_size = field(tokens[2], "s");
      b.col_face_size = field(tokens[3], "t");
      b.orientable = field(tokens[4], "orientable") != 0;
      b.genus = field(tokens[5], b.orientable ? "genus" : "crosscaps");
      have_header = true;
      continue;
    }
    if (tokens[0] != "A" && tokens[0] != "B") {
      throw parse_error(line_no, "face lines must start with color A or B");
    }
    ColoredFace f;
    f.color = tokens[0][0];
    for (size_t i = 1; i < tokens.size(); ++i) {
      f.vertices.push_back(detail::parse_int(tokens[i], line_no));
    }
    if (f.vertices.empty()) throw parse_error(line_no, "face line without vertices");
    b.faces.push_back(std::move(f));
  }
  if (!have_header) throw parse_error(1, "missing 'biembedding' header");
  return b;
}

// Recomputes the Euler data of a certificate and checks it against the
// header; used by standalone verification.
inline std::optional<std::string> certificate_euler_problem(const Biembedding& b) {
  FaceTrace counted;
  counted.orientable = b.orientable;
  counted.faces.resize(b.faces.size());
  try {
    EmbeddingSummary s =
        euler_summary(b.modulus, b.modulus * (b.modulus - 1) / 2, counted);
    if (s.genus != b.genus) {
      return "header claims " + std::string(b.orientable ? "genus " : "crosscaps ") +
             std::to_string(b.genus) + " but Euler's formula gives " + std::to_string(s.genus);
    }
  } catch (const inconsistency_error& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

}  // namespace heffter

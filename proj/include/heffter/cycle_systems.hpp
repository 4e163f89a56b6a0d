#pragma once

// Developing ordered Heffter systems into closed-trail decompositions of
// E(K_M), and checking the cycle-system property. Trails are stored as one
// base representative per part plus a translate index; verification streams
// the M translates instead of materializing them.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "heffter/orderings.hpp"

namespace heffter {

struct ClosedTrail {
  int modulus = 0;
  int part_index = 0;
  int translate = 0;
  std::vector<int> base;  // vertices of the translate-0 trail, starting at 0

  // Vertices of this trail in canonical form.
  std::vector<int> vertices() const {
    std::vector<int> out;
    out.reserve(base.size());
    for (int v : base) out.push_back(canonicalize(static_cast<long long>(v) + translate, modulus));
    return out;
  }
};

struct EdgeDecomposition {
  int modulus = 0;
  std::vector<std::vector<int>> bases;  // one per part

  int trail_count() const { return modulus * static_cast<int>(bases.size()); }

  std::vector<ClosedTrail> trails() const {
    std::vector<ClosedTrail> out;
    out.reserve(trail_count());
    for (size_t p = 0; p < bases.size(); ++p) {
      for (int i = 0; i < modulus; ++i) {
        out.push_back(ClosedTrail{modulus, static_cast<int>(p), i, bases[p]});
      }
    }
    return out;
  }
};

// Develops each ordered part (partial sums s_1..s_k) into the base trail
// (0, s_1, ..., s_{k-1}) and its M translates.
inline EdgeDecomposition develop(const SystemOrdering& om) {
  if (auto problem = system_problem(om.system)) {
    throw precondition_error("develop requires a valid Heffter system: " + *problem);
  }
  check_ordering(om);
  EdgeDecomposition d;
  d.modulus = om.system.modulus;
  for (const auto& seq : om.sequences) {
    auto sums = partial_sums(seq, d.modulus);
    std::vector<int> base{0};
    for (size_t i = 0; i + 1 < sums.size(); ++i) base.push_back(sums[i]);
    d.bases.push_back(std::move(base));
  }
  return d;
}

// True iff the trails cover every undirected edge of K_M exactly once.
inline bool verify_decomposition(const EdgeDecomposition& d) {
  const int M = d.modulus;
  if (M < 3) return false;
  std::vector<uint8_t> count(static_cast<size_t>(M) * M, 0);
  long long covered = 0;
  for (const auto& base : d.bases) {
    const int k = static_cast<int>(base.size());
    if (k < 2) return false;
    for (int i = 0; i < M; ++i) {
      for (int j = 0; j < k; ++j) {
        int u = residue(static_cast<long long>(base[j]) + i, M);
        int v = residue(static_cast<long long>(base[(j + 1) % k]) + i, M);
        if (u == v) return false;
        size_t idx = static_cast<size_t>(std::min(u, v)) * M + std::max(u, v);
        if (count[idx]++) return false;
        ++covered;
      }
    }
  }
  return covered == static_cast<long long>(M) * (M - 1) / 2;
}

// True iff every trail is a simple cycle. Translation preserves vertex
// distinctness, so only the bases are scanned.
inline bool is_cycle_system(const EdgeDecomposition& d) {
  for (const auto& base : d.bases) {
    std::vector<int> v = base;
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) return false;
  }
  return true;
}

// Test twin for verify_decomposition: the consecutive differences of the
// base trails form a half-set iff the development covers E(K_M) once.
inline bool base_differences_are_half_set(const EdgeDecomposition& d) {
  std::vector<int> diffs;
  for (const auto& base : d.bases) {
    const int k = static_cast<int>(base.size());
    for (int j = 0; j < k; ++j) {
      diffs.push_back(canonicalize(
          static_cast<long long>(base[(j + 1) % k]) - base[j], d.modulus));
    }
  }
  return is_half_set(diffs, d.modulus);
}

// Dump format: `trail <part-index> <translate>: v0 v1 ... v_{k-1}` lines.
inline std::string format_decomposition(const EdgeDecomposition& d) {
  std::ostringstream os;
  for (const auto& t : d.trails()) {
    os << "trail " << t.part_index + 1 << ' ' << t.translate << ':';
    for (int v : t.vertices()) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

}  // namespace heffter

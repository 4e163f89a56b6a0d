#pragma once

// Canonical arithmetic in Z_M for odd M, plus half-set bookkeeping.
// Every module in the library stores group elements as canonical ints in
// the symmetric range [-(M-1)/2, (M-1)/2].

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace heffter {

// ---------------------------------------------------------------------------
// Errors

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class modulus_error : public error {
 public:
  using error::error;
};

class domain_error : public error {
 public:
  using error::error;
};

class parameter_error : public error {
 public:
  using error::error;
};

class precondition_error : public error {
 public:
  using error::error;
};

class inconsistency_error : public error {
 public:
  using error::error;
};

class parse_error : public error {
 public:
  parse_error(int line, const std::string& message)
      : error("line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// ---------------------------------------------------------------------------
// Canonical representatives

inline void check_modulus(int modulus) {
  if (modulus < 3 || modulus % 2 == 0) {
    throw modulus_error("modulus must be odd and >= 3, got " +
                        std::to_string(modulus));
  }
}

// Unique representative of v mod M in [-(M-1)/2, (M-1)/2].
inline int canonicalize(long long v, int modulus) {
  check_modulus(modulus);
  long long r = v % modulus;
  if (r < 0) r += modulus;
  if (2 * r > modulus - 1) r -= modulus;
  return static_cast<int>(r);
}

// Representative in [0, M-1]; used for vertex labels and edge tallies.
inline int residue(long long v, int modulus) {
  long long r = v % modulus;
  if (r < 0) r += modulus;
  return static_cast<int>(r);
}

// An element of Z_M held in canonical form. Mixing moduli is a hard error.
class RingElement {
 public:
  RingElement(long long value, int modulus)
      : modulus_(modulus), value_(canonicalize(value, modulus)) {}

  int value() const { return value_; }
  int modulus() const { return modulus_; }

  friend RingElement operator+(const RingElement& a, const RingElement& b) {
    require_same(a, b);
    return RingElement(static_cast<long long>(a.value_) + b.value_, a.modulus_);
  }

  friend RingElement operator-(const RingElement& a, const RingElement& b) {
    require_same(a, b);
    return RingElement(static_cast<long long>(a.value_) - b.value_, a.modulus_);
  }

  friend RingElement operator*(const RingElement& a, const RingElement& b) {
    require_same(a, b);
    return RingElement(static_cast<long long>(a.value_) * b.value_, a.modulus_);
  }

  RingElement operator-() const { return RingElement(-static_cast<long long>(value_), modulus_); }

  friend bool operator==(const RingElement& a, const RingElement& b) {
    require_same(a, b);
    return a.value_ == b.value_;
  }

  friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

  friend bool operator<(const RingElement& a, const RingElement& b) {
    require_same(a, b);
    return a.value_ < b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const RingElement& e) {
    return os << e.value_;
  }

 private:
  static void require_same(const RingElement& a, const RingElement& b) {
    if (a.modulus_ != b.modulus_) {
      throw modulus_error("mixed moduli " + std::to_string(a.modulus_) + " and " +
                          std::to_string(b.modulus_));
    }
  }

  int modulus_;
  int value_;
};

// ---------------------------------------------------------------------------
// Half-sets

// True iff the canonicalized values are (M-1)/2 distinct nonzero elements
// containing exactly one of each pair {x, -x}.
inline bool is_half_set(const std::vector<int>& values, int modulus) {
  check_modulus(modulus);
  std::set<int> canon;
  for (int v : values) {
    int c = canonicalize(v, modulus);
    if (c == 0) return false;
    if (!canon.insert(c).second) return false;
  }
  if (static_cast<int>(canon.size()) != (modulus - 1) / 2) return false;
  for (int c : canon) {
    if (canon.count(-c)) return false;
  }
  return true;
}

inline bool is_half_set(const std::set<int>& values, int modulus) {
  return is_half_set(std::vector<int>(values.begin(), values.end()), modulus);
}

// A set of (M-1)/2 nonzero canonical elements, one from each pair {x, -x}.
class HalfSet {
 public:
  HalfSet(std::vector<int> elements, int modulus) : modulus_(modulus) {
    if (!is_half_set(elements, modulus)) {
      throw domain_error("values do not form a half-set of Z_" + std::to_string(modulus));
    }
    elements_.reserve(elements.size());
    for (int v : elements) elements_.push_back(canonicalize(v, modulus));
    std::sort(elements_.begin(), elements_.end());
  }

  // The half-set {1, ..., (M-1)/2}.
  static HalfSet positives(int modulus) {
    check_modulus(modulus);
    std::vector<int> v;
    for (int i = 1; i <= (modulus - 1) / 2; ++i) v.push_back(i);
    return HalfSet(std::move(v), modulus);
  }

  int modulus() const { return modulus_; }
  const std::vector<int>& elements() const { return elements_; }
  int size() const { return static_cast<int>(elements_.size()); }

  bool contains(int v) const {
    int c = canonicalize(v, modulus_);
    return std::binary_search(elements_.begin(), elements_.end(), c);
  }

  friend bool operator==(const HalfSet& a, const HalfSet& b) {
    return a.modulus_ == b.modulus_ && a.elements_ == b.elements_;
  }

 private:
  int modulus_;
  std::vector<int> elements_;
};

// Set of absolute values of a multiset of integers.
inline std::set<int> support(const std::vector<int>& values) {
  std::set<int> s;
  for (int v : values) s.insert(std::abs(v));
  return s;
}

}  // namespace heffter

// Exact arithmetic foundation: arbitrary-precision integers and rationals,
// integer/rational vectors in the lattice N and its dual M, and the pairing.
// No floating point is used anywhere in the engine; nef/ample distinctions
// are strict-vs-nonstrict inequalities that must be decided exactly.
#pragma once

#include <boost/functional/hash.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toric {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// A point of the lattice N = Z^n (also used for integral points of M).
using LatticeVector = std::vector<Int>;
// A point of M tensor Q.
using DualVector = std::vector<Rat>;

// Engine-wide error with a stable machine-readable code ("ZeroVector",
// "DimensionMismatch", "Unbounded", ...) plus a human-readable message.
struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& message)
      : std::runtime_error(c + ": " + message), code(std::move(c)) {}
};

inline Int dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw Error("DimensionMismatch", "dot of vectors of unequal rank");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot(const DualVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw Error("DimensionMismatch", "pairing of vectors of unequal rank");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * Rat(b[i]);
  return s;
}

inline bool is_zero(const LatticeVector& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

inline LatticeVector negated(const LatticeVector& v) {
  LatticeVector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = -v[i];
  return w;
}

// Floor division for exact box bounds; b must be nonzero.
inline Int div_floor(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int floor_rat(const Rat& q) { return div_floor(numerator(q), denominator(q)); }

inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

inline bool is_integral(const Rat& q) { return denominator(q) == 1; }

inline bool is_integral(const DualVector& v) {
  for (const Rat& q : v)
    if (!is_integral(q)) return false;
  return true;
}

inline LatticeVector to_lattice(const DualVector& v) {
  LatticeVector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_integral(v[i])) throw Error("NotIntegral", "rational vector has a denominator");
    w[i] = numerator(v[i]);
  }
  return w;
}

inline DualVector to_dual(const LatticeVector& v) {
  DualVector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = Rat(v[i]);
  return w;
}

struct LatticeVectorHash {
  std::size_t operator()(const LatticeVector& v) const {
    return boost::hash_range(v.begin(), v.end());
  }
};

inline std::string to_string(const LatticeVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

inline std::string to_string(const DualVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

}  // namespace toric

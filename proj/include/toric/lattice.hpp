// Exact integer and rational linear algebra over the lattice N = Z^n and its
// dual M: primitivization, determinants, rank, kernels, the pairing solve
// that produces Cartier data, and unimodular bases adapted to a primitive
// vector (used for star-fan projections and divisor twists).
//
// Everything here is a pure function of its arguments; all values are
// immutable after construction and safe to share across threads.
#pragma once

#include "toric/numeric.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace toric {

// Divide out the gcd of the coordinates, preserving direction.
inline LatticeVector make_primitive(const LatticeVector& v) {
  if (is_zero(v)) throw Error("ZeroVector", "cannot primitivize the zero vector");
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  LatticeVector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] / g;
  return w;
}

inline bool is_primitive(const LatticeVector& v) {
  if (is_zero(v)) return false;
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  return g == 1;
}

// Exact determinant of the square matrix whose rows are the given vectors
// (Bareiss fraction-free elimination).
inline Int determinant(const std::vector<LatticeVector>& rows) {
  const std::size_t n = rows.size();
  for (const auto& r : rows)
    if (r.size() != n) throw Error("DimensionMismatch", "determinant requires a square system");
  if (n == 0) return 1;
  std::vector<LatticeVector> m = rows;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace detail {

// Rational row-reduction workhorse.  Reduces the k x n matrix in place to
// reduced row echelon form and returns the pivot column of each pivot row.
inline std::vector<int> rref(std::vector<DualVector>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const std::size_t ncols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    Rat inv = m[row][col];
    for (std::size_t j = col; j < m[row].size(); ++j) m[row][j] /= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rat f = m[i][col];
      for (std::size_t j = col; j < m[i].size(); ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

}  // namespace detail

inline int rank_of(const std::vector<LatticeVector>& rows) {
  std::vector<DualVector> m;
  m.reserve(rows.size());
  for (const auto& r : rows) m.push_back(to_dual(r));
  return static_cast<int>(detail::rref(m).size());
}

// Primitive integer basis of { x : <row, x> = 0 for every row }.
inline std::vector<LatticeVector> kernel_basis(const std::vector<LatticeVector>& rows, int ambient) {
  std::vector<DualVector> m;
  m.reserve(rows.size());
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != ambient)
      throw Error("DimensionMismatch", "kernel rows must have the ambient rank");
    m.push_back(to_dual(r));
  }
  std::vector<int> pivots = detail::rref(m);
  std::vector<bool> is_pivot(ambient, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<LatticeVector> basis;
  for (int free = 0; free < ambient; ++free) {
    if (is_pivot[free]) continue;
    DualVector x(ambient, Rat(0));
    x[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -m[i][free];
    // scale to a primitive integer vector
    Int lc = 1;
    for (const Rat& q : x) lc = lcm(lc, denominator(q));
    LatticeVector v(ambient);
    for (int j = 0; j < ambient; ++j) v[j] = numerator(x[j]) * (lc / denominator(x[j]));
    basis.push_back(make_primitive(v));
  }
  return basis;
}

struct DualSolution {
  DualVector m;
  bool integral = false;
  std::vector<int> pivot_columns;
};

// Solve <m, ray_i> = value_i for m in M tensor Q.  Free coordinates are set
// to zero, so for a non-spanning ray set the solution is supported on the
// pivot columns.  Returns nullopt when the system is inconsistent.
inline std::optional<DualSolution> solve_pairing(const std::vector<LatticeVector>& rays,
                                                 const std::vector<Rat>& values) {
  if (rays.size() != values.size())
    throw Error("DimensionMismatch", "one pairing value per ray is required");
  if (rays.empty()) return DualSolution{DualVector{}, true, {}};
  const std::size_t n = rays[0].size();
  std::vector<DualVector> aug(rays.size(), DualVector(n + 1, Rat(0)));
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (rays[i].size() != n) throw Error("DimensionMismatch", "rays of unequal rank");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = Rat(rays[i][j]);
    aug[i][n] = values[i];
  }
  std::vector<int> pivots = detail::rref(aug);
  if (!pivots.empty() && pivots.back() == static_cast<int>(n)) return std::nullopt;
  DualSolution sol;
  sol.m.assign(n, Rat(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) sol.m[pivots[i]] = aug[i][n];
  sol.pivot_columns = pivots;
  sol.integral = is_integral(sol.m);
  return sol;
}

inline std::optional<DualSolution> solve_dual(const std::vector<LatticeVector>& rays,
                                              const std::vector<Int>& values) {
  std::vector<Rat> v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v[i] = Rat(values[i]);
  return solve_pairing(rays, v);
}

namespace detail {

struct ExtGcd {
  Int g, x, y;  // g = gcd(a,b) = x*a + y*b, g >= 0
};

inline ExtGcd ext_gcd(Int a, Int b) {
  Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Int q = a / b, r = a % b;
    a = b;
    b = r;
    Int nx = x0 - q * x1, ny = y0 - q * y1;
    x0 = x1;
    y0 = y1;
    x1 = nx;
    y1 = ny;
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

}  // namespace detail

// A unimodular matrix B (rows) with B*u = e_1, together with its inverse
// (also integral, stored as rows).  Row 0 of B pairs to 1 against u, so
// c * row0(B) is the canonical integral solution of <m, u> = c; rows
// 1..n-1 of B are the projection N -> N/<u> used by star fans.
struct AdaptedBasis {
  std::vector<LatticeVector> basis;    // B, n rows
  std::vector<LatticeVector> inverse;  // B^{-1}, n rows
};

inline AdaptedBasis adapted_basis(const LatticeVector& u) {
  if (!is_primitive(u)) throw Error("NotPrimitive", "adapted basis requires a primitive vector");
  const std::size_t n = u.size();
  std::vector<LatticeVector> B(n, LatticeVector(n, 0)), C(n, LatticeVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) B[i][i] = C[i][i] = 1;
  LatticeVector v = u;
  for (std::size_t i = 1; i < n; ++i) {
    if (v[i] == 0) continue;
    auto [g, x, y] = detail::ext_gcd(v[0], v[i]);
    Int a = v[0] / g, b = v[i] / g;
    // rows (0,i) of B: T = [[x, y], [-b, a]], det 1; columns of C get T^{-1} = [[a, -y], [b, x]]
    for (std::size_t j = 0; j < n; ++j) {
      Int b0 = B[0][j], bi = B[i][j];
      B[0][j] = x * b0 + y * bi;
      B[i][j] = -b * b0 + a * bi;
    }
    for (std::size_t r = 0; r < n; ++r) {
      Int c0 = C[r][0], ci = C[r][i];
      C[r][0] = c0 * a + ci * b;
      C[r][i] = -c0 * y + ci * x;
    }
    v[0] = g;
    v[i] = 0;
  }
  if (v[0] == -1) {
    for (std::size_t j = 0; j < n; ++j) B[0][j] = -B[0][j];
    for (std::size_t r = 0; r < n; ++r) C[r][0] = -C[r][0];
    v[0] = 1;
  }
  if (v[0] != 1) throw Error("NotPrimitive", "gcd reduction did not reach 1");
  // C currently holds B^{-1} as a matrix of columns-of-inverse; convert to rows.
  std::vector<LatticeVector> inv(n, LatticeVector(n, 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv[r][c] = C[r][c];
  return {B, inv};
}

inline LatticeVector matrix_apply(const std::vector<LatticeVector>& rows, const LatticeVector& v) {
  LatticeVector w(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) w[i] = dot(rows[i], v);
  return w;
}

// Row vector times matrix given by rows: (m^T A)_j = sum_i m_i A[i][j].
inline DualVector row_times_matrix(const DualVector& m, const std::vector<LatticeVector>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  DualVector w(cols, Rat(0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) w[j] += m[i] * Rat(rows[i][j]);
  return w;
}

}  // namespace toric

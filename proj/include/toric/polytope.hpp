// Exact lattice polytope computations in rank <= 4: halfspace-to-vertex
// conversion by exhaustive subset intersection, lattice and interior point
// enumeration over exact bounding boxes, Minkowski covering tests, polar
// duality, reflexivity, and the face fan of a reflexive polytope.
#pragma once

#include "toric/fan.hpp"
#include "toric/lattice.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <unordered_set>
#include <vector>

namespace toric {

// The halfspace { m : <m, normal> >= -offset }.
struct Halfspace {
  LatticeVector normal;
  Int offset;

  bool operator==(const Halfspace& o) const { return normal == o.normal && offset == o.offset; }
  bool operator<(const Halfspace& o) const {
    return normal != o.normal ? normal < o.normal : offset < o.offset;
  }
};

struct LatticePolytope {
  int rank = 0;
  std::vector<Halfspace> halfspaces;
};

inline bool satisfies(const DualVector& m, const Halfspace& h) {
  return dot(m, h.normal) >= -Rat(h.offset);
}

inline bool satisfies_strictly(const DualVector& m, const Halfspace& h) {
  return dot(m, h.normal) > -Rat(h.offset);
}

inline bool satisfies(const LatticeVector& m, const Halfspace& h) {
  return dot(m, h.normal) >= -h.offset;
}

inline bool satisfies_strictly(const LatticeVector& m, const Halfspace& h) {
  return dot(m, h.normal) > -h.offset;
}

namespace detail {

// A nonzero direction in which the polyhedron recedes, if one exists.
inline std::optional<LatticeVector> recession_direction(const LatticePolytope& p,
                                                        const std::vector<LatticeVector>& normals) {
  std::vector<LatticeVector> lineality = kernel_basis(normals, p.rank);
  if (!lineality.empty()) return lineality[0];
  std::optional<LatticeVector> found;
  for_each_subset(static_cast<int>(normals.size()), p.rank - 1, [&](const std::vector<int>& sub) {
    if (found) return;
    std::vector<LatticeVector> rows;
    for (int s : sub) rows.push_back(normals[s]);
    std::vector<LatticeVector> ker = kernel_basis(rows, p.rank);
    if (ker.size() != 1) return;
    for (const LatticeVector& w : {ker[0], negated(ker[0])}) {
      bool ok = true;
      for (const auto& nrm : normals)
        if (dot(nrm, w) < 0) {
          ok = false;
          break;
        }
      if (ok) {
        found = w;
        return;
      }
    }
  });
  return found;
}

}  // namespace detail

// All vertices of the polytope, as exact rational points, deduplicated.
// Throws "Unbounded" when the recession cone of the halfspace system is
// nontrivial.
inline std::vector<DualVector> vertices(const LatticePolytope& p) {
  std::vector<Halfspace> hs(p.halfspaces.begin(), p.halfspaces.end());
  std::sort(hs.begin(), hs.end());
  hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
  std::vector<LatticeVector> normals;
  normals.reserve(hs.size());
  for (const auto& h : hs) normals.push_back(h.normal);
  if (auto dir = detail::recession_direction(p, normals))
    throw Error("Unbounded", "polytope recedes along " + to_string(*dir));
  std::set<DualVector> verts;
  detail::for_each_subset(static_cast<int>(hs.size()), p.rank, [&](const std::vector<int>& sub) {
    std::vector<LatticeVector> rows;
    std::vector<Rat> rhs;
    for (int s : sub) {
      rows.push_back(hs[s].normal);
      rhs.push_back(Rat(-hs[s].offset));
    }
    if (rank_of(rows) != p.rank) return;
    auto sol = solve_pairing(rows, rhs);
    if (!sol) return;
    for (const auto& h : hs)
      if (!satisfies(sol->m, h)) return;
    verts.insert(sol->m);
  });
  return std::vector<DualVector>(verts.begin(), verts.end());
}

namespace detail {

template <typename Pred>
inline std::vector<LatticeVector> enumerate_box(const LatticePolytope& p,
                                                const std::vector<DualVector>& verts, Pred keep) {
  std::vector<LatticeVector> out;
  if (verts.empty()) return out;
  const int n = p.rank;
  std::vector<Int> lo(n), hi(n);
  for (int j = 0; j < n; ++j) {
    Rat mn = verts[0][j], mx = verts[0][j];
    for (const auto& v : verts) {
      if (v[j] < mn) mn = v[j];
      if (v[j] > mx) mx = v[j];
    }
    lo[j] = ceil_rat(mn);
    hi[j] = floor_rat(mx);
    if (lo[j] > hi[j]) return out;
  }
  LatticeVector point = lo;
  while (true) {
    if (keep(point)) out.push_back(point);
    int j = 0;
    while (j < n) {
      if (point[j] < hi[j]) {
        ++point[j];
        break;
      }
      point[j] = lo[j];
      ++j;
    }
    if (j == n) break;
  }
  return out;
}

}  // namespace detail

inline std::vector<LatticeVector> lattice_points(const LatticePolytope& p) {
  auto verts = vertices(p);
  return detail::enumerate_box(p, verts, [&](const LatticeVector& m) {
    for (const auto& h : p.halfspaces)
      if (!satisfies(m, h)) return false;
    return true;
  });
}

inline std::vector<LatticeVector> interior_lattice_points(const LatticePolytope& p) {
  auto verts = vertices(p);
  return detail::enumerate_box(p, verts, [&](const LatticeVector& m) {
    for (const auto& h : p.halfspaces)
      if (!satisfies_strictly(m, h)) return false;
    return true;
  });
}

struct CoverReport {
  bool covered = false;
  std::optional<LatticeVector> witness;  // first lattice point of the sum not split
};

// Integer decomposition test: every lattice point of `big` must be the sum
// of a lattice point of `a` and one of `b`.  On failure the first uncovered
// point (in box enumeration order) is reported.
inline CoverReport minkowski_cover(const LatticePolytope& big, const LatticePolytope& a,
                                   const LatticePolytope& b) {
  auto big_pts = lattice_points(big);
  auto a_pts = lattice_points(a);
  auto b_pts = lattice_points(b);
  // Scan the smaller summand per target and hash the larger one.
  const auto& scan = a_pts.size() <= b_pts.size() ? a_pts : b_pts;
  const auto& hashed = a_pts.size() <= b_pts.size() ? b_pts : a_pts;
  std::unordered_set<LatticeVector, LatticeVectorHash> table(hashed.begin(), hashed.end());
  const std::size_t n = big.rank;
  for (const auto& p : big_pts) {
    bool found = false;
    LatticeVector diff(n);
    for (const auto& q : scan) {
      for (std::size_t j = 0; j < n; ++j) diff[j] = p[j] - q[j];
      if (table.count(diff)) {
        found = true;
        break;
      }
    }
    if (!found) return {false, p};
  }
  return {true, std::nullopt};
}

// Convex hull of a full-dimensional set of lattice points: irredundant facet
// halfspaces plus the indices of the points that are vertices.
struct Hull {
  std::vector<Halfspace> facets;
  std::vector<int> vertex_indices;
};

inline Hull hull_of_points(int rank, const std::vector<LatticeVector>& pts) {
  {
    std::vector<LatticeVector> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      LatticeVector d(rank);
      for (int j = 0; j < rank; ++j) d[j] = pts[i][j] - pts[0][j];
      diffs.push_back(std::move(d));
    }
    if (pts.empty() || rank_of(diffs) != rank)
      throw Error("NotFullDimensional", "hull requires points affinely spanning the space");
  }
  std::set<Halfspace> seen;
  Hull hull;
  // Hyperplanes through rank-subsets: kernel of rows (p_i | 1) gives (w, -c)
  // with <w, p_i> = c.
  detail::for_each_subset(static_cast<int>(pts.size()), rank, [&](const std::vector<int>& sub) {
    std::vector<LatticeVector> rows;
    for (int s : sub) {
      LatticeVector r = pts[s];
      r.push_back(1);
      rows.push_back(std::move(r));
    }
    std::vector<LatticeVector> ker = kernel_basis(rows, rank + 1);
    if (ker.size() != 1) return;
    LatticeVector w(ker[0].begin(), ker[0].end() - 1);
    if (is_zero(w)) return;
    Int c = -ker[0][rank];
    bool le = true, ge = true;
    for (const auto& p : pts) {
      Int v = dot(w, p);
      if (v > c) le = false;
      if (v < c) ge = false;
    }
    if (!le && !ge) return;
    Halfspace h;
    if (le) {
      h = Halfspace{negated(w), c};  // <x, -w> >= -c
    } else {
      h = Halfspace{w, -c};
    }
    Int g = 0;
    for (const Int& x : h.normal) g = gcd(g, x);
    for (Int& x : h.normal) x /= g;
    // offsets stay exact lattice distances only if they divide too; keep the
    // primitive-normal normalization and scale the offset with it
    if (h.offset % g == 0) {
      h.offset /= g;
    } else {
      // primitive normal with fractional distance cannot support lattice
      // points on the facet; rescale exactly via the gcd of all entries
      Int g2 = gcd(g, h.offset);
      for (Int& x : h.normal) x *= (g / g2);
      h.offset /= g2;
    }
    if (seen.insert(h).second) hull.facets.push_back(h);
  });
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<LatticeVector> active;
    for (const auto& h : hull.facets)
      if (dot(pts[i], h.normal) == -h.offset) active.push_back(h.normal);
    if (rank_of(active) == rank) hull.vertex_indices.push_back(static_cast<int>(i));
  }
  return hull;
}

inline LatticePolytope polytope_from_points(int rank, const std::vector<LatticeVector>& pts) {
  return LatticePolytope{rank, hull_of_points(rank, pts).facets};
}

// The polar dual { y : <y, x> >= -1 for all x in P }.  Requires the origin
// in the interior of P.
inline LatticePolytope polar(const LatticePolytope& p) {
  auto verts = vertices(p);
  if (verts.empty()) throw Error("OriginNotInterior", "polar of an empty polytope");
  // Re-derive irredundant facets from the (scaled) vertex set to test that
  // the origin is strictly inside.
  Int scale = 1;
  for (const auto& v : verts)
    for (const Rat& q : v) scale = lcm(scale, denominator(q));
  std::vector<LatticeVector> scaled;
  for (const auto& v : verts) {
    LatticeVector w(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) w[j] = numerator(v[j]) * (scale / denominator(v[j]));
    scaled.push_back(std::move(w));
  }
  Hull hull = hull_of_points(p.rank, scaled);
  for (const auto& f : hull.facets)
    if (f.offset <= 0) throw Error("OriginNotInterior", "origin is not an interior point");
  LatticePolytope out;
  out.rank = p.rank;
  for (int vi : hull.vertex_indices) {
    const DualVector& v = verts[vi];
    Int den = 1;
    for (const Rat& q : v) den = lcm(den, denominator(q));
    LatticeVector normal(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
      normal[j] = numerator(v[j]) * (den / denominator(v[j]));
    out.halfspaces.push_back(Halfspace{std::move(normal), den});  // <y, v> >= -1, scaled by den
  }
  return out;
}

// Reflexive iff P and its polar both have integral vertex sets.
inline bool is_reflexive(const LatticePolytope& p) {
  std::vector<DualVector> verts;
  try {
    verts = vertices(p);
  } catch (const Error&) {
    return false;
  }
  if (verts.empty()) return false;
  for (const auto& v : verts)
    if (!is_integral(v)) return false;
  try {
    for (const auto& v : vertices(polar(p)))
      if (!is_integral(v)) return false;
  } catch (const Error&) {
    return false;
  }
  return true;
}

// The fan whose maximal cones are the cones over the facets of P and whose
// rays are the vertices of P.  For reflexive P the associated variety is
// Gorenstein Fano with section polytope of -K equal to polar(P).
inline Fan face_fan(const LatticePolytope& p) {
  auto verts = vertices(p);
  if (verts.empty()) throw Error("OriginNotInterior", "face fan of an empty polytope");
  std::vector<LatticeVector> pts;
  for (const auto& v : verts) {
    if (!is_integral(v)) throw Error("NotLattice", "face fan requires integral vertices");
    pts.push_back(to_lattice(v));
  }
  Hull hull = hull_of_points(p.rank, pts);
  for (const auto& f : hull.facets)
    if (f.offset <= 0) throw Error("OriginNotInterior", "origin is not an interior point");
  std::vector<LatticeVector> rays;
  std::vector<int> point_to_ray(pts.size(), -1);
  for (int vi : hull.vertex_indices) {
    point_to_ray[vi] = static_cast<int>(rays.size());
    rays.push_back(make_primitive(pts[vi]));
  }
  std::vector<std::vector<int>> cones;
  for (const auto& f : hull.facets) {
    std::vector<int> cone;
    for (int vi : hull.vertex_indices)
      if (dot(pts[vi], f.normal) == -f.offset) cone.push_back(point_to_ray[vi]);
    cones.push_back(std::move(cone));
  }
  return make_fan(p.rank, std::move(rays), std::move(cones));
}

}  // namespace toric

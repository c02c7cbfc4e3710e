// Fans of strongly convex rational polyhedral cones: combinatorial
// predicates (complete, simplicial, smooth), wall enumeration, star fans of
// rays (the fans of torus-invariant prime divisors), and the ray-preserving
// pulling triangulation that realizes a small Q-factorialization.
//
// Fans are immutable after construction; every operation here is pure.
#pragma once

#include "toric/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace toric {

// A cone of the fan, stored as sorted indices into the parent ray list.
struct Cone {
  std::vector<int> rays;

  bool operator==(const Cone& o) const { return rays == o.rays; }
};

struct Fan {
  int rank = 0;
  std::vector<LatticeVector> rays;  // primitive generators
  std::vector<Cone> max_cones;

  bool operator==(const Fan& o) const {
    return rank == o.rank && rays == o.rays && max_cones == o.max_cones;
  }
};

inline Fan make_fan(int rank, std::vector<LatticeVector> rays, std::vector<std::vector<int>> cones) {
  Fan f;
  f.rank = rank;
  f.rays = std::move(rays);
  std::vector<bool> used(f.rays.size(), false);
  for (auto& c : cones) {
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end())
      throw Error("InvalidFan", "repeated ray index in a cone");
    for (int i : c) {
      if (i < 0 || i >= static_cast<int>(f.rays.size()))
        throw Error("InvalidFan", "cone references a nonexistent ray");
      used[i] = true;
    }
    f.max_cones.push_back(Cone{std::move(c)});
  }
  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    if (static_cast<int>(f.rays[i].size()) != rank)
      throw Error("InvalidFan", "ray rank mismatch");
    if (!is_primitive(f.rays[i]))
      throw Error("InvalidFan", "ray " + std::to_string(i) + " is not primitive");
    if (!used[i]) throw Error("InvalidFan", "ray " + std::to_string(i) + " lies in no maximal cone");
  }
  return f;
}

namespace detail {

inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

// A facet (codimension-one face) of a cone: the supporting normal within the
// span of the cone, and the sorted indices of the generators lying on it.
struct ConeFacet {
  LatticeVector normal;   // pairs >= 0 against every generator of the cone
  std::vector<int> rays;  // generators with pairing zero
};

// Facets of the cone spanned by the given fan rays.  Works for cones of any
// dimension d >= 1 inside the ambient lattice; the normals are chosen inside
// the span of the cone (orthogonal complement of the cone's annihilator).
inline std::vector<ConeFacet> facets_of_cone(const Fan& fan, const std::vector<int>& cone_rays) {
  std::vector<LatticeVector> gens;
  gens.reserve(cone_rays.size());
  for (int i : cone_rays) gens.push_back(fan.rays[i]);
  const int d = rank_of(gens);
  if (d == 0) return {};
  std::vector<LatticeVector> ann = kernel_basis(gens, fan.rank);  // annihilator of span
  std::vector<ConeFacet> facets;
  std::set<std::vector<int>> seen;
  detail::for_each_subset(static_cast<int>(gens.size()), d - 1, [&](const std::vector<int>& sub) {
    std::vector<LatticeVector> rows = ann;
    for (int s : sub) rows.push_back(gens[s]);
    std::vector<LatticeVector> ker = kernel_basis(rows, fan.rank);
    if (ker.size() != 1) return;
    LatticeVector w = ker[0];
    bool nonneg = true, nonpos = true;
    for (const auto& g : gens) {
      Int p = dot(w, g);
      if (p < 0) nonneg = false;
      if (p > 0) nonpos = false;
    }
    if (!nonneg && !nonpos) return;
    if (!nonneg) w = negated(w);
    std::vector<int> zero;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (dot(w, gens[i]) == 0) zero.push_back(cone_rays[i]);
    std::sort(zero.begin(), zero.end());
    if (seen.insert(zero).second) facets.push_back(ConeFacet{std::move(w), std::move(zero)});
  });
  return facets;
}

// Membership of a lattice vector in the cone spanned by the given rays.
inline bool cone_contains(const Fan& fan, const std::vector<int>& cone_rays, const LatticeVector& v) {
  std::vector<LatticeVector> gens;
  for (int i : cone_rays) gens.push_back(fan.rays[i]);
  std::vector<LatticeVector> with_v = gens;
  with_v.push_back(v);
  if (rank_of(with_v) != rank_of(gens)) return false;
  for (const auto& facet : facets_of_cone(fan, cone_rays))
    if (dot(facet.normal, v) < 0) return false;
  return true;
}

inline int cone_dimension(const Fan& fan, const Cone& c) {
  std::vector<LatticeVector> gens;
  for (int i : c.rays) gens.push_back(fan.rays[i]);
  return rank_of(gens);
}

// Complete iff all maximal cones are full-dimensional and every wall
// (codimension-one face of a maximal cone) lies in exactly two of them.
inline bool is_complete(const Fan& fan) {
  if (fan.max_cones.empty()) return false;
  std::map<std::vector<int>, int> wall_count;
  for (const Cone& c : fan.max_cones) {
    if (cone_dimension(fan, c) != fan.rank) return false;
    for (const auto& facet : facets_of_cone(fan, c.rays)) ++wall_count[facet.rays];
  }
  for (const auto& [rays, count] : wall_count)
    if (count != 2) return false;
  return true;
}

inline bool is_simplicial(const Fan& fan) {
  for (const Cone& c : fan.max_cones)
    if (cone_dimension(fan, c) != static_cast<int>(c.rays.size())) return false;
  return true;
}

// Smooth iff every maximal cone is simplicial and its rays extend to a basis
// of the lattice: the gcd of the maximal minors of the ray matrix is 1 (for
// full-dimensional cones this is |det| = 1).
inline bool is_smooth(const Fan& fan) {
  for (const Cone& c : fan.max_cones) {
    const int k = static_cast<int>(c.rays.size());
    std::vector<LatticeVector> gens;
    for (int i : c.rays) gens.push_back(fan.rays[i]);
    if (rank_of(gens) != k) return false;
    Int g = 0;
    detail::for_each_subset(fan.rank, k, [&](const std::vector<int>& cols) {
      std::vector<LatticeVector> sq(k, LatticeVector(k));
      for (int r = 0; r < k; ++r)
        for (int j = 0; j < k; ++j) sq[r][j] = gens[r][cols[j]];
      g = gcd(g, determinant(sq));
    });
    if (abs(g) != 1) return false;
  }
  return true;
}

// The P^n fan is the unique smooth complete fan with n+1 rays and n+1
// maximal cones.
inline bool is_projective_space_fan(const Fan& fan) {
  return static_cast<int>(fan.rays.size()) == fan.rank + 1 &&
         static_cast<int>(fan.max_cones.size()) == fan.rank + 1 && is_smooth(fan) &&
         is_complete(fan);
}

// A wall of a complete fan with its two adjacent maximal cones; the
// torus-invariant curve V(wall).
struct InvariantCurveWall {
  std::vector<int> rays;  // sorted ray indices spanning the wall
  int cone_a = -1;
  int cone_b = -1;
};

inline std::vector<InvariantCurveWall> walls(const Fan& fan) {
  std::map<std::vector<int>, std::vector<int>> adj;
  for (std::size_t ci = 0; ci < fan.max_cones.size(); ++ci) {
    const Cone& c = fan.max_cones[ci];
    if (cone_dimension(fan, c) != fan.rank)
      throw Error("RequiresComplete", "walls require a complete fan");
    for (const auto& facet : facets_of_cone(fan, c.rays))
      adj[facet.rays].push_back(static_cast<int>(ci));
  }
  std::vector<InvariantCurveWall> out;
  for (const auto& [rays, cones] : adj) {
    if (cones.size() != 2) throw Error("RequiresComplete", "wall not shared by exactly two cones");
    out.push_back(InvariantCurveWall{rays, cones[0], cones[1]});
  }
  return out;
}

// The star fan of a ray: the fan of the torus-invariant prime divisor V(ray)
// in the quotient lattice N/<u_ray>, together with the projection data
// needed to push divisors down to it.
struct StarFan {
  Fan fan;                       // rank n-1
  int center = -1;               // the ray of the parent fan being starred
  std::vector<int> parent_to_star;  // parent ray index -> star ray index, -1 if not adjacent
  std::vector<Int> multiplier;      // P * u_parent = multiplier * u_star (0 if not adjacent)
  AdaptedBasis basis;               // B with B*u_center = e_1; rows 1..n-1 are the projection
};

inline StarFan star_fan(const Fan& fan, int ray_index) {
  if (ray_index < 0 || ray_index >= static_cast<int>(fan.rays.size()))
    throw Error("InvalidRay", "star fan of a nonexistent ray");
  StarFan star;
  star.center = ray_index;
  star.basis = adapted_basis(fan.rays[ray_index]);
  std::vector<LatticeVector> proj(star.basis.basis.begin() + 1, star.basis.basis.end());
  star.parent_to_star.assign(fan.rays.size(), -1);
  star.multiplier.assign(fan.rays.size(), Int(0));
  std::map<LatticeVector, int> ray_lookup;
  std::vector<LatticeVector> star_rays;
  std::vector<std::vector<int>> star_cones;
  std::set<std::vector<int>> seen_cones;
  for (const Cone& c : fan.max_cones) {
    if (std::find(c.rays.begin(), c.rays.end(), ray_index) == c.rays.end()) continue;
    std::vector<int> image;
    for (int r : c.rays) {
      if (r == ray_index) continue;
      if (star.parent_to_star[r] < 0) {
        LatticeVector v = matrix_apply(proj, fan.rays[r]);
        LatticeVector prim = make_primitive(v);
        Int mult = 0;
        for (std::size_t j = 0; j < v.size(); ++j)
          if (prim[j] != 0) {
            mult = v[j] / prim[j];
            break;
          }
        auto it = ray_lookup.find(prim);
        int idx;
        if (it == ray_lookup.end()) {
          idx = static_cast<int>(star_rays.size());
          ray_lookup.emplace(prim, idx);
          star_rays.push_back(prim);
        } else {
          idx = it->second;
        }
        star.parent_to_star[r] = idx;
        star.multiplier[r] = mult;
      }
      image.push_back(star.parent_to_star[r]);
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (seen_cones.insert(image).second) star_cones.push_back(image);
  }
  star.fan = make_fan(fan.rank - 1, std::move(star_rays), std::move(star_cones));
  return star;
}

namespace detail {

// Pulling triangulation of a single cone at its lexicographically smallest
// ray: cone over the pulled triangulations of the facets missing that ray.
inline std::vector<std::vector<int>> pull_triangulate(const Fan& fan, const std::vector<int>& cone_rays) {
  std::vector<LatticeVector> gens;
  for (int i : cone_rays) gens.push_back(fan.rays[i]);
  const int d = rank_of(gens);
  if (static_cast<int>(cone_rays.size()) == d) return {cone_rays};
  int apex = cone_rays[0];
  for (int r : cone_rays)
    if (fan.rays[r] < fan.rays[apex]) apex = r;
  std::vector<std::vector<int>> out;
  for (const auto& facet : facets_of_cone(fan, cone_rays)) {
    if (std::find(facet.rays.begin(), facet.rays.end(), apex) != facet.rays.end()) continue;
    for (auto simplex : pull_triangulate(fan, facet.rays)) {
      simplex.push_back(apex);
      std::sort(simplex.begin(), simplex.end());
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

}  // namespace detail

// Deterministic ray-preserving simplicial refinement: every non-simplicial
// maximal cone is replaced by its pulling triangulation; simplicial fans come
// back unchanged.
inline Fan small_qfactorialization(const Fan& fan) {
  std::vector<std::vector<int>> cones;
  for (const Cone& c : fan.max_cones) {
    if (cone_dimension(fan, c) == static_cast<int>(c.rays.size())) {
      cones.push_back(c.rays);
    } else {
      for (auto& simplex : detail::pull_triangulate(fan, c.rays)) cones.push_back(std::move(simplex));
    }
  }
  return make_fan(fan.rank, fan.rays, std::move(cones));
}

}  // namespace toric

// Torus-invariant divisor calculus: Cartier data via local pairing solves,
// nef/ample support-function convexity, section polytopes and h^0 counts,
// restriction to invariant prime divisors through the star-fan projection,
// wall intersection numbers, linear equivalence witnesses, and the
// Gorenstein/Fano predicates.
//
// Divisors are stored by one integer coefficient per fan ray; classes are
// only ever produced through explicit character witnesses.  Non-Cartier
// divisors are first-class values: operations that need Cartier data report
// the first failing cone.
#pragma once

#include "toric/fan.hpp"
#include "toric/polytope.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace toric {

struct TorusInvariantDivisor {
  std::vector<Int> coeff;  // aligned with the fan's ray order

  bool operator==(const TorusInvariantDivisor& o) const { return coeff == o.coeff; }
};

inline TorusInvariantDivisor zero_divisor(const Fan& fan) {
  return {std::vector<Int>(fan.rays.size(), Int(0))};
}

inline TorusInvariantDivisor prime_divisor(const Fan& fan, int ray) {
  TorusInvariantDivisor d = zero_divisor(fan);
  d.coeff.at(ray) = 1;
  return d;
}

// K_X = -sum of all prime invariant divisors.
inline TorusInvariantDivisor canonical_divisor(const Fan& fan) {
  return {std::vector<Int>(fan.rays.size(), Int(-1))};
}

inline TorusInvariantDivisor anticanonical_divisor(const Fan& fan) {
  return {std::vector<Int>(fan.rays.size(), Int(1))};
}

inline TorusInvariantDivisor add(const TorusInvariantDivisor& a, const TorusInvariantDivisor& b) {
  if (a.coeff.size() != b.coeff.size())
    throw Error("DimensionMismatch", "divisors on different fans");
  TorusInvariantDivisor out;
  out.coeff.resize(a.coeff.size());
  for (std::size_t i = 0; i < a.coeff.size(); ++i) out.coeff[i] = a.coeff[i] + b.coeff[i];
  return out;
}

inline TorusInvariantDivisor scale(const Int& c, const TorusInvariantDivisor& d) {
  TorusInvariantDivisor out;
  out.coeff.resize(d.coeff.size());
  for (std::size_t i = 0; i < d.coeff.size(); ++i) out.coeff[i] = c * d.coeff[i];
  return out;
}

inline TorusInvariantDivisor subtract(const TorusInvariantDivisor& a, const TorusInvariantDivisor& b) {
  return add(a, scale(-1, b));
}

enum class CartierLevel { NotQCartier, QCartier, Cartier };

// Local data m_sigma with <m_sigma, u_rho> = -a_rho for every ray of sigma.
// `failing_cone` is the first maximal cone where the local solve fails
// (NotQCartier) or where the unique local solution is not integral
// (QCartier).
struct CartierStatus {
  CartierLevel level = CartierLevel::NotQCartier;
  std::vector<DualVector> cone_data;  // one per maximal cone; valid when level >= QCartier
  int failing_cone = -1;
};

inline CartierStatus cartier_data(const Fan& fan, const TorusInvariantDivisor& d) {
  if (d.coeff.size() != fan.rays.size())
    throw Error("DimensionMismatch", "divisor does not match the fan's ray count");
  CartierStatus st;
  st.cone_data.reserve(fan.max_cones.size());
  int first_non_integral = -1;
  for (std::size_t ci = 0; ci < fan.max_cones.size(); ++ci) {
    const Cone& c = fan.max_cones[ci];
    std::vector<LatticeVector> rows;
    std::vector<Int> values;
    for (int r : c.rays) {
      rows.push_back(fan.rays[r]);
      values.push_back(-d.coeff[r]);
    }
    auto sol = solve_dual(rows, values);
    if (!sol) {
      st.level = CartierLevel::NotQCartier;
      st.failing_cone = static_cast<int>(ci);
      st.cone_data.clear();
      return st;
    }
    if (!sol->integral && first_non_integral < 0) first_non_integral = static_cast<int>(ci);
    st.cone_data.push_back(std::move(sol->m));
  }
  if (first_non_integral < 0) {
    st.level = CartierLevel::Cartier;
  } else {
    st.level = CartierLevel::QCartier;
    st.failing_cone = first_non_integral;
  }
  return st;
}

// Support-function convexity over the precomputed local data: nef iff
// <m_sigma, u_rho> >= -a_rho for every maximal cone sigma and ray rho not in
// sigma; ample iff all those inequalities are strict.
struct Positivity {
  CartierLevel level = CartierLevel::NotQCartier;
  bool nef = false;    // convexity of the (rational) support function
  bool ample = false;  // strict convexity
  int failing_cone = -1;
};

inline Positivity positivity(const Fan& fan, const TorusInvariantDivisor& d) {
  Positivity out;
  CartierStatus st = cartier_data(fan, d);
  out.level = st.level;
  out.failing_cone = st.failing_cone;
  if (st.level == CartierLevel::NotQCartier) return out;
  out.nef = out.ample = true;
  for (std::size_t ci = 0; ci < fan.max_cones.size() && out.nef; ++ci) {
    const Cone& c = fan.max_cones[ci];
    for (std::size_t r = 0; r < fan.rays.size(); ++r) {
      if (std::find(c.rays.begin(), c.rays.end(), static_cast<int>(r)) != c.rays.end()) continue;
      Rat v = dot(st.cone_data[ci], fan.rays[r]);
      Rat bound = Rat(-d.coeff[r]);
      if (v < bound) {
        out.nef = out.ample = false;
        break;
      }
      if (v == bound) out.ample = false;
    }
  }
  return out;
}

// Public nef/ample follow the Cartier contract: a non-Cartier divisor is
// reported as neither.
inline bool is_nef(const Fan& fan, const TorusInvariantDivisor& d) {
  Positivity p = positivity(fan, d);
  return p.level == CartierLevel::Cartier && p.nef;
}

inline bool is_ample(const Fan& fan, const TorusInvariantDivisor& d) {
  Positivity p = positivity(fan, d);
  return p.level == CartierLevel::Cartier && p.ample;
}

// Nefness of a Q-Cartier divisor through its rational support function.
inline bool is_q_nef(const Fan& fan, const TorusInvariantDivisor& d) {
  Positivity p = positivity(fan, d);
  return p.level != CartierLevel::NotQCartier && p.nef;
}

inline bool is_q_ample(const Fan& fan, const TorusInvariantDivisor& d) {
  Positivity p = positivity(fan, d);
  return p.level != CartierLevel::NotQCartier && p.ample;
}

// Section polytope P_D = { m : <m, u_rho> >= -a_rho for every ray }.
inline LatticePolytope polytope_of(const Fan& fan, const TorusInvariantDivisor& d) {
  if (d.coeff.size() != fan.rays.size())
    throw Error("DimensionMismatch", "divisor does not match the fan's ray count");
  LatticePolytope p;
  p.rank = fan.rank;
  for (std::size_t i = 0; i < fan.rays.size(); ++i)
    p.halfspaces.push_back(Halfspace{fan.rays[i], d.coeff[i]});
  return p;
}

inline Int h0(const Fan& fan, const TorusInvariantDivisor& d) {
  return Int(lattice_points(polytope_of(fan, d)).size());
}

// Restriction of a Cartier divisor to the invariant prime divisor of a ray.
// The divisor is first twisted by the canonical character with
// <m, u_ray> = -a_ray so its coefficient at the ray vanishes; the twisted
// local data then descends to Cartier data on the star fan.  The result is
// well defined up to linear equivalence.
struct RestrictedDivisor {
  StarFan star;
  TorusInvariantDivisor divisor;  // on star.fan
};

inline RestrictedDivisor restrict_to_invariant_divisor(const Fan& fan,
                                                       const TorusInvariantDivisor& d, int ray) {
  CartierStatus st = cartier_data(fan, d);
  if (st.level != CartierLevel::Cartier)
    throw Error("NotCartier",
                "restriction requires a Cartier divisor (cone " +
                    std::to_string(st.failing_cone) + " fails)");
  RestrictedDivisor out{star_fan(fan, ray), {}};
  const LatticeVector& row0 = out.star.basis.basis[0];  // pairs to 1 against u_ray
  out.divisor.coeff.assign(out.star.fan.rays.size(), Int(0));
  std::vector<bool> assigned(out.star.fan.rays.size(), false);
  for (std::size_t r = 0; r < fan.rays.size(); ++r) {
    int sr = out.star.parent_to_star[r];
    if (sr < 0) continue;
    Int twisted = d.coeff[r] - d.coeff[ray] * dot(row0, fan.rays[r]);
    if (twisted % out.star.multiplier[r] != 0)
      throw Error("NotCartier", "restricted coefficient is not integral");
    Int b = twisted / out.star.multiplier[r];
    if (assigned[sr] && out.divisor.coeff[sr] != b)
      throw Error("NotCartier", "inconsistent restricted coefficients");
    out.divisor.coeff[sr] = b;
    assigned[sr] = true;
  }
  return out;
}

// Intersection number of a Cartier divisor with the invariant curve of a
// wall on a smooth complete fan.  The sign convention is calibrated so that
// ample divisors have positive degree on every wall (H . line = 1 on the
// projective plane).
inline Int invariant_curve_degree(const Fan& fan, const TorusInvariantDivisor& d,
                                  const InvariantCurveWall& wall) {
  if (!is_smooth(fan) || !is_complete(fan))
    throw Error("RequiresSmoothComplete", "wall degrees are defined on smooth complete fans");
  CartierStatus st = cartier_data(fan, d);
  if (st.level != CartierLevel::Cartier)
    throw Error("NotCartier", "wall degree requires a Cartier divisor");
  const Cone& cb = fan.max_cones[wall.cone_b];
  int extra = -1;
  for (int r : cb.rays)
    if (std::find(wall.rays.begin(), wall.rays.end(), r) == wall.rays.end()) {
      extra = r;
      break;
    }
  if (extra < 0) throw Error("InvalidFan", "wall equals its adjacent cone");
  Rat deg = dot(st.cone_data[wall.cone_a], fan.rays[extra]) -
            dot(st.cone_data[wall.cone_b], fan.rays[extra]);
  if (!is_integral(deg)) throw Error("NotIntegral", "wall degree of a Cartier divisor");
  return numerator(deg);
}

// Witness m with a1_rho - a2_rho = <m, u_rho> for every ray, i.e.
// D1 - D2 = div(chi^m).  Returns nullopt when the divisors are not linearly
// equivalent (inconsistent system or non-integral character).
inline std::optional<LatticeVector> linear_equivalence(const Fan& fan,
                                                       const TorusInvariantDivisor& d1,
                                                       const TorusInvariantDivisor& d2) {
  std::vector<Int> values(fan.rays.size());
  for (std::size_t i = 0; i < fan.rays.size(); ++i) values[i] = d1.coeff[i] - d2.coeff[i];
  auto sol = solve_dual(fan.rays, values);
  if (!sol || !sol->integral) return std::nullopt;
  return to_lattice(sol->m);
}

// Rational variant used for Q-linear equivalence bookkeeping.
inline std::optional<DualVector> q_linear_equivalence(const Fan& fan,
                                                      const std::vector<Rat>& coeff_difference) {
  auto sol = solve_pairing(fan.rays, coeff_difference);
  if (!sol) return std::nullopt;
  return sol->m;
}

inline bool is_gorenstein(const Fan& fan) {
  return cartier_data(fan, canonical_divisor(fan)).level == CartierLevel::Cartier;
}

inline bool is_gorenstein_fano(const Fan& fan) {
  return is_gorenstein(fan) && is_ample(fan, anticanonical_divisor(fan));
}

inline bool is_q_gorenstein_fano(const Fan& fan) {
  return is_q_ample(fan, anticanonical_divisor(fan));
}

}  // namespace toric

// Built-in fixture varieties: projective spaces, Hirzebruch surfaces, the
// projective cone over the quadric surface, the two smooth Fano threefolds
// carrying a divisor D with L + D not nef (a P^1-bundle over the plane and
// an iterated blow-up of P^3), and the non-Gorenstein weighted plane
// P(1,1,2) used by negative tests.
//
// Which ray of the bundle fixtures plays the role of the negative section D
// (self-degree -2 on its lines, star fan a projective plane) is calibrated
// at build time from wall degrees, not assumed from the ray listing.
#pragma once

#include "toric/audit.hpp"
#include "toric/divisor.hpp"

#include <string>
#include <vector>

namespace toric {

inline Fan fixture_p2() {
  return make_fan(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}});
}

inline Fan fixture_p3() {
  return make_fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}},
                  {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

// The Hirzebruch surface F_a.
inline Fan fixture_hirzebruch(const Int& a) {
  return make_fan(2, {{1, 0}, {0, 1}, {-1, a}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

inline Fan fixture_p1xp1() { return fixture_hirzebruch(0); }

// Projective cone over the quadric surface: one non-simplicial maximal cone
// over a unit square at height one, completed by a pyramid underneath.
// Gorenstein Fano and singular.
inline Fan fixture_quadric_cone() {
  return make_fan(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}, {0, 0, -1}},
                  {{0, 1, 2, 3}, {0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {0, 3, 4}});
}

// Weighted projective plane P(1,1,2): simplicial, complete, not Gorenstein.
inline Fan fixture_p112() {
  return make_fan(2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {0, 2}});
}

// The ray whose prime divisor is a projective plane on which the divisor
// itself restricts with degree -2 (the negative section / strict transform
// of the examples).  Requires the candidate to be unique.
inline int calibrate_negative_section(const Fan& fan) {
  std::vector<int> candidates;
  auto ws = walls(fan);
  for (std::size_t r = 0; r < fan.rays.size(); ++r) {
    StarFan star = star_fan(fan, static_cast<int>(r));
    if (star.fan.rays.size() != 3 || !is_projective_space_fan(star.fan)) continue;
    for (const auto& w : ws) {
      if (std::find(w.rays.begin(), w.rays.end(), static_cast<int>(r)) == w.rays.end()) continue;
      if (invariant_curve_degree(fan, prime_divisor(fan, static_cast<int>(r)), w) == -2)
        candidates.push_back(static_cast<int>(r));
      break;
    }
  }
  if (candidates.size() != 1)
    throw Error("Calibration", "expected a unique ray with plane star and self-degree -2");
  return candidates[0];
}

// P(O + O(2)) over the projective plane.  L(alpha) = alpha D + (2 alpha + 1)
// pi^* line is ample with L|_D a line exactly for alpha >= 1, and L + D is
// then not nef along the lines of D.
struct X1Fixture {
  Fan fan;
  int d_ray = -1;                  // the negative section, by calibration
  TorusInvariantDivisor section;   // D
  TorusInvariantDivisor pi_line;   // pullback of a line from the base

  TorusInvariantDivisor polarization(const Int& alpha) const {
    return add(scale(alpha, section), scale(2 * alpha + 1, pi_line));
  }
};

inline X1Fixture fixture_x1() {
  X1Fixture x;
  x.fan = make_fan(3, {{1, 0, 0}, {0, 1, 0}, {-1, -1, 2}, {0, 0, 1}, {0, 0, -1}},
                   {{0, 1, 3}, {0, 1, 4}, {1, 2, 3}, {1, 2, 4}, {0, 2, 3}, {0, 2, 4}});
  x.d_ray = calibrate_negative_section(x.fan);
  x.section = prime_divisor(x.fan, x.d_ray);
  x.pi_line = prime_divisor(x.fan, 0);  // any base divisor represents pi^* line
  return x;
}

// Blow-up of P^3 at a fixed point followed by the blow-up of an invariant
// line inside the exceptional plane.  D is the strict transform of the first
// exceptional divisor, E the second exceptional divisor, Gamma the pullback
// of a line under the induced fibration to the plane.
struct X2Fixture {
  Fan fan;
  int d_ray = -1;
  TorusInvariantDivisor strict_transform;  // D
  TorusInvariantDivisor gamma;             // fibration line class
  TorusInvariantDivisor exceptional;       // E

  TorusInvariantDivisor polarization(const Int& alpha, const Int& beta) const {
    return add(add(scale(alpha, strict_transform), scale(beta, gamma)),
               scale(2 * alpha - beta + 1, exceptional));
  }
};

inline X2Fixture fixture_x2() {
  X2Fixture x;
  x.fan = make_fan(3,
                   {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}, {1, 1, 1}, {2, 1, 1}},
                   {{0, 1, 3},
                    {0, 2, 3},
                    {1, 2, 3},
                    {1, 2, 4},
                    {1, 4, 5},
                    {0, 1, 5},
                    {2, 4, 5},
                    {0, 2, 5}});
  x.d_ray = calibrate_negative_section(x.fan);
  x.strict_transform = prime_divisor(x.fan, x.d_ray);
  x.exceptional = prime_divisor(x.fan, 5);
  // Gamma = H - D - E for H the pullback of a general plane.
  x.gamma = subtract(subtract(prime_divisor(x.fan, 3), x.strict_transform), x.exceptional);
  return x;
}

inline std::vector<std::string> fixture_names() {
  return {"p2", "p3", "f0", "f1", "f2", "f3", "f4", "f5", "quadric-cone", "x1", "x2"};
}

inline Fan fixture_fan(const std::string& name) {
  if (name == "p2") return fixture_p2();
  if (name == "p3") return fixture_p3();
  if (name.size() == 2 && name[0] == 'f' && name[1] >= '0' && name[1] <= '9')
    return fixture_hirzebruch(Int(name[1] - '0'));
  if (name == "quadric-cone") return fixture_quadric_cone();
  if (name == "x1") return fixture_x1().fan;
  if (name == "x2") return fixture_x2().fan;
  if (name == "p112") return fixture_p112();
  throw Error("UnknownFixture", "no fixture named '" + name + "'");
}

enum class ExampleFixture { X1, X2 };

struct ClassifyRow {
  Int alpha = 0;
  Int beta = 0;  // unused for the X1 family
  bool ample = false;
  bool line_restriction = false;  // L|_D linearly equivalent to a line of the plane
  bool l_plus_d_nef = false;
  bool admissible = false;  // ample and restricting to a line
};

namespace detail {

inline ClassifyRow classify_one(const Fan& fan, int d_ray, const TorusInvariantDivisor& l,
                                const Int& alpha, const Int& beta) {
  ClassifyRow row;
  row.alpha = alpha;
  row.beta = beta;
  row.ample = is_ample(fan, l);
  row.l_plus_d_nef = is_nef(fan, add(l, prime_divisor(fan, d_ray)));
  if (row.ample) {
    RestrictedDivisor rd = restrict_to_invariant_divisor(fan, l, d_ray);
    row.line_restriction =
        linear_equivalence(rd.star.fan, rd.divisor, prime_divisor(rd.star.fan, 0)).has_value();
  }
  row.admissible = row.ample && row.line_restriction;
  return row;
}

}  // namespace detail

// Enumerates the polarizations of the example families over an integer
// parameter box and reports, for each, ampleness, whether L restricts to a
// line on D, and whether L + D is nef.
inline std::vector<ClassifyRow> example_xld_classify(ExampleFixture which, const Int& alpha_min,
                                                     const Int& alpha_max, const Int& beta_min = 1,
                                                     const Int& beta_max = 1) {
  std::vector<ClassifyRow> rows;
  if (which == ExampleFixture::X1) {
    X1Fixture x = fixture_x1();
    for (Int a = alpha_min; a <= alpha_max; ++a)
      rows.push_back(detail::classify_one(x.fan, x.d_ray, x.polarization(a), a, 0));
  } else {
    X2Fixture x = fixture_x2();
    for (Int a = alpha_min; a <= alpha_max; ++a)
      for (Int b = beta_min; b <= beta_max; ++b)
        rows.push_back(detail::classify_one(x.fan, x.d_ray, x.polarization(a, b), a, b));
  }
  return rows;
}

}  // namespace toric

#pragma once

// Pairwise unresolved lubrication forces between nearly touching spheres
// (and sphere-wall), from series expansions of the Stokes-flow resistance:
//
//   F_i = -a_sq (u_pr . n) n - a_sh (2/(h + <d>))^2 [u_pr - (u_pr . n) n]
//
// with n pointing from i toward j, u_pr = u_i - u_j (translation only,
// no angular terms, no torque), <d> = 2 d_i d_j / (d_i + d_j) (wall:
// <d> = 2 d_i), and gap h between the surfaces.
//
// Activation window: 0 < h < h_c. The force law models the thin fluid
// film between separated surfaces; once they touch the film is gone and
// the contact model takes over, so overlapping states get no lubrication.
// Tiny positive gaps are clamped to h_min to bound the 1/h squeeze term.
//
// The printed a_sq turns negative for gaps beyond roughly 0.8 <d> (the
// log terms change sign before the cutoff does). It is applied as
// printed; callers may count occurrences via the anomaly flag.

#include <cmath>

#include "lbdem/core.hpp"

namespace lbdem {

struct LubricationParams {
  real mu_0 = 0;              // dynamic fluid viscosity
  real h_c = 0;               // cutoff gap; 0 disables the force entirely
  real min_gap = real(1e-5);  // clamp floor for positive gaps (units of dx)
};

inline real mean_diameter(real d_i, real d_j) {
  return real(2) * d_i * d_j / (d_i + d_j);
}

// Squeeze (normal) resistance coefficient, as printed.
inline real lubrication_a_sq(real mu_0, real mean_d, real h) {
  const real lg = std::log(mean_d / (real(2) * h));
  return real(1.5) * pi() * mu_0 * mean_d *
         (mean_d / (real(4) * h) + (real(18) / real(40)) * lg +
          (real(9) / real(84)) * (h / mean_d) * lg);
}

// Shear (tangential) resistance coefficient, as printed; the trailing
// (<d>+h)^2/4 factor cancels against the (2/(h+<d>))^2 prefactor of the
// tangential term, leaving a pure log coefficient.
inline real lubrication_a_sh(real mu_0, real mean_d, real h) {
  const real lg = std::log(mean_d / (real(2) * h));
  const real dh = mean_d + h;
  return real(0.5) * pi() * mu_0 * mean_d * lg * dh * dh / real(4);
}

struct LubricationForce {
  Vec3 force{};               // on body i
  bool active = false;        // gap inside (0, h_c)
  bool negative_a_sq = false; // printed squeeze coefficient came out < 0
};

// Clamped film thickness for a surface gap, or -1 when the gap is outside
// the activation window (0, h_c).
inline real lubrication_active_gap(real gap, const LubricationParams& prm) {
  if (!(gap > real(0)) || gap >= prm.h_c) return real(-1);
  return gap < prm.min_gap ? prm.min_gap : gap;
}

// Force kernel once the unit normal n, film thickness h, its reciprocal,
// and the shared log lg = log(<d>/(2h)) are in hand. Hot loops batch the
// log evaluations and feed them in; lubrication_force below is the
// one-call form.
inline LubricationForce lubrication_force_given_log(
    const Vec3& n, real h, real inv_h, real lg, real mean_d, const Vec3& u_pr,
    const LubricationParams& prm) {
  LubricationForce out;

  // Shared base; the (<d>+h)^2/4 tail of a_sh cancels exactly against the
  // (2/(h+<d>))^2 prefactor of the tangential term, leaving the pure log
  // coefficient.
  const real base = pi() * prm.mu_0 * mean_d;
  const real a_sq = real(1.5) * base *
                    (real(0.25) * mean_d * inv_h + (real(18) / real(40)) * lg +
                     (real(9) / real(84)) * (h / mean_d) * lg);
  const real c_sh = real(0.5) * base * lg;

  const real upr_n = dot(u_pr, n);
  const Vec3 u_n = upr_n * n;
  const Vec3 u_t = u_pr - u_n;

  out.force = -a_sq * u_n - c_sh * u_t;
  out.active = true;
  out.negative_a_sq = a_sq < real(0);
  return out;
}

// Force on body i. delta_ji = x_j - x_i (minimum image applied by the
// caller), u_pr = u_i - u_j. For a wall, pass the vector from the sphere
// center to its wall projection as delta_ji, u_pr = u_i, and the wall
// mean diameter 2 d_i. dist = |delta_ji|, precomputed because the contact
// loop already has it. Both coefficients share one log evaluation; the
// normal coefficient matches lubrication_a_sq term for term and the
// tangential one equals lubrication_a_sh times its squared prefactor.
inline LubricationForce lubrication_force(const Vec3& delta_ji, real dist,
                                          real gap, real mean_d,
                                          const Vec3& u_pr,
                                          const LubricationParams& prm) {
  const real h = lubrication_active_gap(gap, prm);
  if (h < real(0)) return LubricationForce{};
  if (!(dist > real(0))) {
    fail(ErrorCategory::domain, "coincident centers in lubrication pair");
  }
  const real inv_h = real(1) / h;
  const real lg = std::log(real(0.5) * mean_d * inv_h);
  return lubrication_force_given_log(delta_ji / dist, h, inv_h, lg, mean_d,
                                     u_pr, prm);
}

inline LubricationForce lubrication_force(const Vec3& delta_ji, real gap,
                                          real mean_d, const Vec3& u_pr,
                                          const LubricationParams& prm) {
  return lubrication_force(delta_ji, norm(delta_ji), gap, mean_d, u_pr, prm);
}

// Surface gap for a sphere pair with center distance |delta|.
inline real pair_gap(real center_dist, real d_i, real d_j) {
  return center_dist - real(0.5) * (d_i + d_j);
}

// Surface gap to a wall plane for a sphere whose center sits at signed
// distance center_dist from the plane (positive side = inside domain).
inline real wall_gap(real center_dist, real d_i) {
  return center_dist - real(0.5) * d_i;
}

}  // namespace lbdem

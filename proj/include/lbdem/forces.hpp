#pragma once

// Hydrodynamic force closures for particles smaller than a grid cell.
// All quantities are in lattice units; fluid fields are first interpolated
// to the particle position by the caller.

#include <cmath>

#include "lbdem/core.hpp"

namespace lbdem {

// Single-sphere drag correction normalized to Stokes drag:
// 1 at Re = 0, Schiller-Naumann growth for finite Re.
inline real drag_cd0(real re) {
  if (re <= real(0)) return real(1);
  return real(1) + real(0.15) * std::pow(re, real(0.687));
}

// Tenneti-Garg-Subramaniam correction for finite solid volume fraction.
// Multiplies the Stokes reference 3 pi d mu (1 - eps_p) (u_f - u_p).
inline real drag_correction(real re, real eps_p) {
  const real ef = real(1) - eps_p;
  const real ef2 = ef * ef;
  const real ef3 = ef2 * ef;
  const real a = real(5.81) * eps_p / ef3 +
                 real(0.48) * std::cbrt(eps_p) / (ef3 * ef);
  const real ep3 = eps_p * eps_p * eps_p;
  const real b = ep3 * re * (real(0.95) + real(0.61) * ep3 / ef2);
  return ef * (drag_cd0(re) / ef3 + a + b);
}

// Particle Reynolds number based on the superficial slip velocity.
inline real particle_reynolds(real eps_f, real rho_f, real d_p, real slip_mag,
                              real mu_0) {
  return eps_f * rho_f * d_p * slip_mag / mu_0;
}

// Steady drag. mu_0 is the plain dynamic viscosity: the volume-fraction
// dependence is entirely inside the correction factor, so an effective
// (mixture) viscosity must not be used here.
inline Vec3 drag_force(const Vec3& u_f, const Vec3& u_p, real eps_p, real d_p,
                       real mu_0, real rho_f) {
  const Vec3 slip = u_f - u_p;
  const real eps_f = real(1) - eps_p;
  const real re = particle_reynolds(eps_f, rho_f, d_p, norm(slip), mu_0);
  const real cd = drag_correction(re, eps_p);
  return (real(3) * pi() * d_p * mu_0 * eps_f * cd) * slip;
}

// Force from the undisturbed pressure field, -V_p grad P. Acts on the
// particle only; it has no reaction on the fluid because the fluid already
// carries its own pressure gradient.
inline Vec3 pressure_gradient_force(const Vec3& grad_p, real d_p) {
  return -sphere_volume(d_p) * grad_p;
}

// Saffman shear lift. Below the vorticity floor the 1/sqrt|curl|
// prefactor is noise-dominated and the force is switched off.
inline Vec3 lift_force(const Vec3& u_f, const Vec3& u_p, const Vec3& curl_u,
                       real d_p, real mu_0, real rho_f, real curl_floor) {
  const real cu = norm(curl_u);
  if (cu < curl_floor) return Vec3{};
  const real coeff =
      real(1.61) * d_p * d_p * std::sqrt(mu_0 * rho_f / cu);
  return coeff * cross(u_f - u_p, curl_u);
}

// Added (virtual) mass responding to relative acceleration. du_f_dt is
// the material derivative of the fluid velocity at the particle; du_p_dt
// is a backward difference of the particle velocity.
inline Vec3 added_mass_force(const Vec3& du_f_dt, const Vec3& du_p_dt,
                             real c_am, real rho_f, real d_p) {
  return c_am * rho_f * sphere_volume(d_p) * (du_f_dt - du_p_dt);
}

// Net weight: gravity plus buoyancy collapsed into one term.
inline Vec3 weight_force(real rho_p, real rho_f, real d_p, const Vec3& gravity) {
  return (rho_p - rho_f) * sphere_volume(d_p) * gravity;
}

}  // namespace lbdem

#pragma once

// Soft-sphere discrete element model: linear spring-damper normal force,
// Coulomb-capped viscous tangential force, semi-implicit Euler updates.
// Walls are static half-spaces. All state is in lattice units inside the
// coupled solver; the model itself is unit-agnostic.

#include <cmath>
#include <string>
#include <vector>

#include "lbdem/core.hpp"

namespace lbdem {

struct Particle {
  Vec3 x{};              // center position
  Vec3 u{};              // translational velocity
  Vec3 omega{};          // angular velocity
  real d = 1;            // diameter
  real rho = 1;          // material density
  Vec3 ext_force{};      // hydrodynamic + weight forces, frozen per subcycle
  Vec3 force_acc{};      // per-substep accumulator (ext + contact + lubrication)
  Vec3 torque_acc{};     // per-substep accumulator (contact only)
  Vec3 prev_velocity{};  // velocity at the previous subcycle, for added mass

  real mass() const { return rho * sphere_volume(d); }
  real inertia() const { return sphere_inertia(mass(), d); }
};

struct DemParams {
  real k_n = 0;    // normal spring stiffness
  real xi_n = 0;   // normal damping coefficient
  real xi_t = 0;   // tangential damping coefficient
  real mu_c = 0;   // Coulomb friction coefficient
  real e_n = 1;    // dry normal restitution (bookkeeping)
  real t_c = 0;    // collision duration (bookkeeping)
};

// Stiffness and damping from a prescribed collision duration and dry
// restitution for effective mass m_ij (m/2 for equal spheres, m against a
// wall). The damped oscillator then has half-period t_c and amplitude
// ratio e_n per half-period.
inline DemParams derive_contact_params(real m_ij, real e_n, real t_c,
                                       real mu_c) {
  const real ln_e = std::log(e_n);
  const real s = pi() * pi() + ln_e * ln_e;
  DemParams p;
  p.k_n = m_ij * s / (t_c * t_c);
  p.xi_n = real(-2) * ln_e * std::sqrt(m_ij * p.k_n) / std::sqrt(s);
  p.xi_t = p.xi_n;
  p.mu_c = mu_c;
  p.e_n = e_n;
  p.t_c = t_c;
  return p;
}

// Inverse relation: half-period of the damped oscillator. Recovers t_c
// from the derived stiffness and damping to round-off.
inline real collision_time(real k_n, real xi_n, real m_ij) {
  return real(2) * pi() * m_ij /
         std::sqrt(real(4) * m_ij * k_n - xi_n * xi_n);
}

struct WallPlane {
  Vec3 point{};   // any point on the plane
  Vec3 normal{};  // unit normal pointing into the domain
};

struct ContactForce {
  bool touching = false;
  real overlap = 0;
  Vec3 force{};       // total force on the first body
  Vec3 tangential{};  // tangential component of that force
  Vec3 normal_dir{};  // unit normal, from the first body toward the second
};

// Spring-damper contact force on body a. delta_ba = x_b - x_a with the
// minimum image already applied by the caller; the contact normal n
// points from a toward b. The relative surface velocity includes the
// rotation of both bodies:
//   u_r = u_a - u_b + (d_a/2 omega_a + d_b/2 omega_b) x n
//   F_n = -k_n delta n - xi_n u_r^n
//   F_t = -min(mu_c |F_n|, xi_t |u_r^t|) t,  t = u_r^t / |u_r^t|
inline ContactForce compute_contact(const Vec3& delta_ba, real dist, real d_a,
                                    real d_b, const Vec3& u_a, const Vec3& u_b,
                                    const Vec3& omega_a, const Vec3& omega_b,
                                    const DemParams& prm) {
  ContactForce out;
  const real overlap = real(0.5) * (d_a + d_b) - dist;
  if (overlap <= real(0)) return out;
  if (!(dist > real(0))) {
    fail(ErrorCategory::domain, "coincident particle centers in contact");
  }
  const Vec3 n = delta_ba / dist;
  const Vec3 u_r = u_a - u_b +
                   cross(real(0.5) * d_a * omega_a + real(0.5) * d_b * omega_b, n);
  const Vec3 u_rn = dot(u_r, n) * n;
  const Vec3 u_rt = u_r - u_rn;

  const Vec3 f_n = (-prm.k_n * overlap) * n - prm.xi_n * u_rn;

  // Coulomb cap decided on squared magnitudes; the sticking branch then
  // needs no root at all and the sliding one only a single combined one.
  Vec3 f_t{};
  const real ut_sq = norm_sq(u_rt);
  if (ut_sq > real(0)) {
    const real visc_sq = prm.xi_t * prm.xi_t * ut_sq;
    const real cap_sq = prm.mu_c * prm.mu_c * norm_sq(f_n);
    if (visc_sq <= cap_sq) {
      f_t = -prm.xi_t * u_rt;
    } else {
      f_t = -prm.mu_c * std::sqrt(norm_sq(f_n) / ut_sq) * u_rt;
    }
  }

  out.touching = true;
  out.overlap = overlap;
  out.force = f_n + f_t;
  out.tangential = f_t;
  out.normal_dir = n;
  return out;
}

inline ContactForce compute_contact(const Vec3& delta_ba, real d_a, real d_b,
                                    const Vec3& u_a, const Vec3& u_b,
                                    const Vec3& omega_a, const Vec3& omega_b,
                                    const DemParams& prm) {
  return compute_contact(delta_ba, norm(delta_ba), d_a, d_b, u_a, u_b, omega_a,
                         omega_b, prm);
}

// Accumulates the contact between two particles. Returns true while the
// surfaces overlap. The tangential torque F_t x n carries the same sign
// for both partners, each scaled by its own radius.
inline bool apply_pair_contact(Particle& a, Particle& b, const Vec3& delta_ba,
                               real dist, const DemParams& prm) {
  const ContactForce c = compute_contact(delta_ba, dist, a.d, b.d, a.u, b.u,
                                         a.omega, b.omega, prm);
  if (!c.touching) return false;
  a.force_acc = a.force_acc + c.force;
  b.force_acc = b.force_acc - c.force;
  const Vec3 t = cross(c.tangential, c.normal_dir);
  a.torque_acc = a.torque_acc + real(0.5) * a.d * t;
  b.torque_acc = b.torque_acc + real(0.5) * b.d * t;
  return true;
}

inline bool apply_pair_contact(Particle& a, Particle& b, const Vec3& delta_ba,
                               const DemParams& prm) {
  return apply_pair_contact(a, b, delta_ba, norm(delta_ba), prm);
}

// Wall treated as a resting body of infinite extent. Returns true while
// touching.
inline bool apply_wall_contact(Particle& a, const WallPlane& w,
                               const DemParams& prm) {
  const real center_dist = dot(a.x - w.point, w.normal);
  const real overlap = real(0.5) * a.d - center_dist;
  if (overlap <= real(0)) return false;
  // Reuse the pair kernel with a virtual resting partner placed so that the
  // overlap equals the surface penetration; its diameter never enters since
  // it does not rotate. The contact normal then points into the wall.
  const Vec3 delta = -(real(0.5) * a.d + center_dist) * w.normal;
  const ContactForce c = compute_contact(delta, a.d, a.d, a.u, Vec3{},
                                         a.omega, Vec3{}, prm);
  if (!c.touching) return false;
  a.force_acc = a.force_acc + c.force;
  a.torque_acc =
      a.torque_acc + real(0.5) * a.d * cross(c.tangential, c.normal_dir);
  return true;
}

// Semi-implicit Euler: velocity first, then position with the updated
// velocity. Position wrapping is the caller's responsibility.
inline void integrate_particle(Particle& p, real dt) {
  const real inv_m = real(1) / p.mass();
  const real inv_i = real(1) / p.inertia();
  p.u = p.u + (dt * inv_m) * p.force_acc;
  p.omega = p.omega + (dt * inv_i) * p.torque_acc;
  p.x = p.x + dt * p.u;
}

}  // namespace lbdem

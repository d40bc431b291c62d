#pragma once

// Reference correlations and measurement helpers for the two validation
// problems: hindered settling of a sphere suspension and the wet rebound
// of a sphere from a plane wall.

#include <cmath>
#include <cstdint>

#include "lbdem/core.hpp"
#include "lbdem/driver.hpp"
#include "lbdem/forces.hpp"

namespace lbdem {

// Richardson-Zaki exponent kappa(Re_T) for unbounded suspensions,
// piecewise over the terminal Reynolds number.
inline real richardson_zaki_exponent(real re_t) {
  if (re_t < real(0.2)) return real(4.65);
  if (re_t < real(1)) return real(4.35) * std::pow(re_t, real(-0.03));
  if (re_t < real(500)) return real(4.45) * std::pow(re_t, real(-0.1));
  return real(2.39);
}

// <u_pS>/u_pT = (1 - <eps_p>)^kappa.
inline real hindered_settling_ratio(real mean_eps_p, real kappa) {
  return std::pow(real(1) - mean_eps_p, kappa);
}

// Stokes response time of a sphere.
inline real stokes_relaxation_time(real rho_p, real d_p, real mu_0) {
  return rho_p * d_p * d_p / (real(18) * mu_0);
}

// Collision Stokes number St = rho_p u d_p / (9 mu_0) = (rho_p/rho_f) Re/9.
inline real stokes_number(real rho_p, real rho_f, real d_p, real speed,
                          real mu_0) {
  return rho_p * speed * d_p / (real(9) * mu_0);
}

struct DragBalance {
  real u_t = 0;   // terminal speed
  real re_t = 0;  // Reynolds number at u_t
};

// Terminal settling speed of a sphere from the force balance
//   (rho_p - rho_f) V g = 3 pi d mu_0 (1 - eps_p) C_d(Re, eps_p) u,
// solved by bisection. Works in any self-consistent unit system.
inline DragBalance terminal_velocity(real d_p, real rho_p, real rho_f,
                                     real mu_0, real g_mag, real eps_p = 0) {
  if (!(rho_p > rho_f) || !(g_mag > real(0)) || !(mu_0 > real(0))) {
    fail(ErrorCategory::config,
         "terminal velocity needs rho_p > rho_f, positive g and viscosity");
  }
  const real weight = (rho_p - rho_f) * sphere_volume(d_p) * g_mag;
  const real eps_f = real(1) - eps_p;
  const auto drag_mag = [&](real u) {
    const real re = particle_reynolds(eps_f, rho_f, d_p, u, mu_0);
    return real(3) * pi() * d_p * mu_0 * eps_f * drag_correction(re, eps_p) * u;
  };

  // Bracket: start from the Stokes estimate and double until drag exceeds
  // the weight.
  real hi = weight / (real(3) * pi() * d_p * mu_0 * eps_f);
  while (drag_mag(hi) < weight) hi *= real(2);
  real lo = 0;
  for (int it = 0; it < 200; ++it) {
    const real mid = real(0.5) * (lo + hi);
    if (drag_mag(mid) < weight) lo = mid;
    else hi = mid;
  }
  const real u_t = real(0.5) * (lo + hi);
  return {u_t, particle_reynolds(eps_f, rho_f, d_p, u_t, mu_0)};
}

// Mean particle velocity relative to the cell-averaged fluid velocity,
// the quantity the hindered settling correlation predicts.
inline Vec3 mean_relative_velocity(Simulation& sim) {
  return sim.mean_particle_velocity() - sim.mean_fluid_velocity();
}

// Measures the wet restitution of a single sphere falling onto the bottom
// wall. Feed one sample per fluid step. Protocol: the approach speed is
// the largest downward speed seen before first wall contact (the sphere
// reaches terminal velocity before impact); the impact time t_I is the
// step at which contact ends after the first collision; the rebound
// velocity is sampled at t_I + 0.1 d_p / u_terminal.
class BounceObserver {
 public:
  explicit BounceObserver(real d_p) : d_p_(d_p) {}

  void record(const Vec3& u_p, bool wall_contact_this_step) {
    ++step_;
    switch (phase_) {
      case Phase::falling:
        if (-u_p.z > approach_speed_) approach_speed_ = -u_p.z;
        if (wall_contact_this_step) phase_ = Phase::in_contact;
        break;
      case Phase::in_contact:
        if (!wall_contact_this_step) {
          release_step_ = step_;
          if (!(approach_speed_ > real(0))) {
            fail(ErrorCategory::domain,
                 "wall contact before any downward motion");
          }
          sample_step_ =
              release_step_ + real(0.1) * d_p_ / approach_speed_;
          phase_ = Phase::waiting;
          // The sampling instant can fall inside the current step.
          maybe_sample(u_p);
        }
        break;
      case Phase::waiting:
        maybe_sample(u_p);
        break;
      case Phase::done:
        break;
    }
  }

  bool done() const { return phase_ == Phase::done; }
  bool contact_seen() const { return phase_ != Phase::falling; }
  real terminal_speed() const { return approach_speed_; }
  real rebound_velocity() const { return rebound_velocity_; }
  std::int64_t release_step() const { return release_step_; }

  // e_wet = -u_pR / u_pT with u_pT the (negative) terminal velocity.
  real wet_restitution() const {
    if (phase_ != Phase::done) {
      fail(ErrorCategory::domain, "rebound not yet sampled");
    }
    return rebound_velocity_ / approach_speed_;
  }

 private:
  enum class Phase { falling, in_contact, waiting, done };

  void maybe_sample(const Vec3& u_p) {
    if (real(step_) >= sample_step_) {
      rebound_velocity_ = u_p.z;
      phase_ = Phase::done;
    }
  }

  real d_p_;
  Phase phase_ = Phase::falling;
  std::int64_t step_ = -1;
  real approach_speed_ = 0;
  std::int64_t release_step_ = 0;
  real sample_step_ = 0;
  real rebound_velocity_ = 0;
};

}  // namespace lbdem

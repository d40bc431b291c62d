#pragma once

// Ready-made configurations for the two validation problems.
//
// Hindered settling: a periodic box of glass spheres in water, gravity on
// the spheres only, and a uniform upward driving force on the fluid that
// exactly balances the submerged weight of the suspension, so the net
// momentum input is zero and a steady relative settling velocity exists.
// The unit mapping fixes dx from the sphere diameter and dt from the
// prescribed lattice gravity.
//
// Wall bounce: a single heavy sphere falling in a closed box onto the
// bottom wall. The fluid parameters are solved from a target collision
// Stokes number at a prescribed lattice gravity: the density ratio is
// kept at a default (raised only when the terminal Reynolds number would
// exceed a cap) and the viscosity follows from the drag balance at the
// target Reynolds number.

#include <cmath>
#include <cstdint>

#include "lbdem/benchmarks.hpp"
#include "lbdem/core.hpp"
#include "lbdem/driver.hpp"
#include "lbdem/packing.hpp"
#include "lbdem/units.hpp"

namespace lbdem {

// ---------------------------------------------------------------------
// Hindered settling
// ---------------------------------------------------------------------

struct HinderedParams {
  real d_lat = real(0.5);   // particle diameter in cells
  int box_diameters = 16;   // cubic box edge in particle diameters
  real target_eps_p = real(0.3);
  std::uint64_t seed = 1;
  real duration_stokes = 30;   // run length in Stokes times
  real averaging_stokes = 5;   // trailing averaging window

  // Physical data (SI): glass spheres in water.
  real d_p_si = real(0.35e-3);
  real rho_f_si = 1000;
  real rho_p_si = 2500;
  real mu_si = real(1.0e-3);
  real g_si = real(9.81);
  real g_lat = real(0.002);  // lattice gravity; fixes the time step

  // Contact and lubrication.
  real e_n = real(0.88);
  real mu_c = real(0.25);
  real t_c_steps = real(0.5);  // collision duration in fluid steps
  real h_c_over_d = 1;         // lubrication cutoff in diameters

  // Numerics and models.
  int n_int = 10;
  int n_dem = 50;
  bool use_lift = true;
  bool use_added_mass = true;
  bool use_les = true;
  bool use_eilers = true;
};

struct HinderedSetup {
  SimParams sim;        // complete except for the particle list
  PackingParams pack;
  UnitMap units;
  real t_stokes = 0;    // Stokes time in steps
  int steps_total = 0;
  int steps_average = 0;
  real rho_p_lat = 0;
  DragBalance single_sphere;  // drag-balance terminal state (lattice)
};

inline HinderedSetup make_hindered_setup(const HinderedParams& hp) {
  if (!(hp.d_lat > real(0)) || hp.box_diameters < 1) {
    fail(ErrorCategory::config, "invalid hindered-settling geometry");
  }
  const int cells = static_cast<int>(
      std::llround(real(hp.box_diameters) * hp.d_lat));
  if (std::fabs(real(cells) - real(hp.box_diameters) * hp.d_lat) >
      real(1e-9)) {
    fail(ErrorCategory::config,
         "box edge must be a whole number of cells");
  }

  HinderedSetup s;
  const real dx = hp.d_p_si / hp.d_lat;
  const real dt = std::sqrt(hp.g_lat * dx / hp.g_si);
  s.units = UnitMap{dx, dt, hp.rho_f_si};

  const real mu_lat = s.units.dynamic_viscosity_to_lattice(hp.mu_si);
  s.rho_p_lat = hp.rho_p_si / hp.rho_f_si;

  s.sim.grid = GridSpec{cells, cells, cells,
                        {AxisBoundary::periodic, AxisBoundary::periodic,
                         AxisBoundary::periodic}};
  s.sim.mu_0 = mu_lat;
  s.sim.rho_f = 1;
  s.sim.gravity = Vec3{0, 0, -hp.g_lat};
  s.sim.gravity_on_fluid = false;
  s.sim.n_int = hp.n_int;
  s.sim.n_dem = hp.n_dem;
  s.sim.use_lift = hp.use_lift;
  s.sim.use_added_mass = hp.use_added_mass;
  s.sim.use_les = hp.use_les;
  s.sim.use_eilers = hp.use_eilers;

  // Pairwise contact: effective mass of two identical spheres.
  const real m = s.rho_p_lat * sphere_volume(hp.d_lat);
  s.sim.dem = derive_contact_params(real(0.5) * m, hp.e_n, hp.t_c_steps,
                                    hp.mu_c);
  s.sim.lub.mu_0 = mu_lat;
  s.sim.lub.h_c = hp.h_c_over_d * hp.d_lat;

  s.pack.diameter = hp.d_lat;
  s.pack.rho_p = s.rho_p_lat;
  s.pack.target_eps_p = hp.target_eps_p;
  s.pack.seed = hp.seed;

  s.t_stokes = stokes_relaxation_time(s.rho_p_lat, hp.d_lat, mu_lat);
  s.steps_total = static_cast<int>(
      std::llround(hp.duration_stokes * s.t_stokes));
  s.steps_average = static_cast<int>(
      std::llround(hp.averaging_stokes * s.t_stokes));
  if (s.steps_average < 1) s.steps_average = 1;
  if (s.steps_average > s.steps_total) s.steps_average = s.steps_total;

  s.single_sphere =
      terminal_velocity(hp.d_lat, s.rho_p_lat, real(1), mu_lat, hp.g_lat);
  return s;
}

// The counter-balancing driving force for a given mean solid fraction:
// upward, equal to the submerged weight per unit volume.
inline Vec3 buoyant_counter_force(real mean_eps_p, real rho_p_lat,
                                  real rho_f_lat, const Vec3& gravity) {
  return -mean_eps_p * (rho_p_lat - rho_f_lat) * gravity;
}

struct HinderedReport {
  real settling_velocity = 0;  // time-averaged <u_pS>_z, lattice units
  real mean_eps_p = 0;         // achieved solid fraction
  int particle_count = 0;
  int steps = 0;
  real t_stokes = 0;
  UnitMap units;
  std::uint64_t final_state_hash = 0;
};

// Runs the suspension case. on_step(sim, step_index) fires after every
// completed fluid step.
template <class F>
inline HinderedReport run_hindered(const HinderedParams& hp, F&& on_step) {
  HinderedSetup s = make_hindered_setup(hp);
  std::vector<Particle> ps = pack_spheres(s.sim.grid, s.pack);

  const Vec3 ext = s.sim.grid.extent();
  const real mean_eps =
      real(ps.size()) * sphere_volume(hp.d_lat) / (ext.x * ext.y * ext.z);
  s.sim.body_force =
      buoyant_counter_force(mean_eps, s.rho_p_lat, real(1), s.sim.gravity);

  Simulation sim(s.sim, std::move(ps));

  real sum = 0;
  int samples = 0;
  const int start_avg = s.steps_total - s.steps_average;
  for (int step = 0; step < s.steps_total; ++step) {
    sim.step();
    if (step >= start_avg) {
      sum += mean_relative_velocity(sim).z;
      ++samples;
    }
    on_step(sim, step);
  }

  HinderedReport r;
  r.settling_velocity = sum / real(samples);
  r.mean_eps_p = mean_eps;
  r.particle_count = static_cast<int>(sim.particles().size());
  r.steps = s.steps_total;
  r.t_stokes = s.t_stokes;
  r.units = s.units;
  r.final_state_hash = sim.state_hash();
  return r;
}

struct SingleSphereReport {
  real u_relative = 0;     // measured steady relative velocity (lattice, < 0)
  real u_predicted = 0;    // drag-balance terminal speed (lattice, > 0)
  real re_measured = 0;
  real re_predicted = 0;
  int steps = 0;
  UnitMap units;
  std::uint64_t final_state_hash = 0;
};

// One sphere settling in the periodic box: the direct check of the drag
// closure against the force balance it should reproduce.
template <class F>
inline SingleSphereReport run_single_sphere(const HinderedParams& hp,
                                            F&& on_step) {
  HinderedParams one = hp;
  one.duration_stokes = std::max(hp.duration_stokes, real(20));
  HinderedSetup s = make_hindered_setup(one);

  const Vec3 ext = s.sim.grid.extent();
  const real box_volume = ext.x * ext.y * ext.z;
  const real mean_eps = sphere_volume(hp.d_lat) / box_volume;
  s.sim.body_force =
      buoyant_counter_force(mean_eps, s.rho_p_lat, real(1), s.sim.gravity);

  std::vector<Particle> ps(1);
  ps[0].d = hp.d_lat;
  ps[0].rho = s.rho_p_lat;
  ps[0].x = real(0.5) * ext;

  Simulation sim(s.sim, std::move(ps));

  real sum = 0;
  int samples = 0;
  const int start_avg = s.steps_total - s.steps_average;
  for (int step = 0; step < s.steps_total; ++step) {
    sim.step();
    if (step >= start_avg) {
      sum += mean_relative_velocity(sim).z;
      ++samples;
    }
    on_step(sim, step);
  }

  SingleSphereReport r;
  r.u_relative = sum / real(samples);
  r.u_predicted = s.single_sphere.u_t;
  r.re_predicted = s.single_sphere.re_t;
  r.re_measured = std::fabs(r.u_relative) * hp.d_lat / (s.sim.mu_0);
  r.steps = s.steps_total;
  r.units = s.units;
  r.final_state_hash = sim.state_hash();
  return r;
}

// ---------------------------------------------------------------------
// Sphere-wall bounce
// ---------------------------------------------------------------------

struct BounceParams {
  real d_lat = real(0.5);
  int box_xy_diameters = 16;
  int box_z_diameters = 256;
  real stokes_target = 128;
  real g_lat = real(1e-4);
  real rho_r_default = 8;   // density ratio unless the Reynolds cap binds
  real re_cap = 180;        // keeps the lattice terminal velocity moderate

  real e_n = real(0.97);
  real mu_c = real(0.1);
  real h_c_over_d = 1;

  int n_int = 10;
  int n_dem = 50;
  bool use_lift = true;
  bool use_added_mass = true;
  bool use_les = true;
  bool use_eilers = true;

  real drop_below_top_diameters = 3;
  real max_steps_safety = 4;  // budget multiple of the ballistic estimate
};

struct BounceTarget {
  real rho_r = 0;
  real nu_lat = 0;
  real u_t = 0;   // drag-balance terminal speed
  real re_t = 0;
};

// Solves the drag balance for the fluid viscosity that realizes a target
// collision Stokes number St = rho_r Re / 9 at fixed lattice gravity:
//   (rho_r - 1) (pi/6) d^3 g = 3 pi d nu C_d0(Re) u,   u = Re nu / d.
inline BounceTarget bounce_target(real st, real d_lat, real g_lat,
                                  real rho_r_default, real re_cap) {
  if (!(st > real(0))) fail(ErrorCategory::config, "Stokes target must be positive");
  BounceTarget t;
  t.rho_r = rho_r_default;
  t.re_t = real(9) * st / t.rho_r;
  if (t.re_t > re_cap) {
    t.re_t = re_cap;
    t.rho_r = real(9) * st / re_cap;
  }
  const real nu_sq = (t.rho_r - real(1)) * d_lat * d_lat * d_lat * g_lat /
                     (real(18) * drag_cd0(t.re_t) * t.re_t);
  t.nu_lat = std::sqrt(nu_sq);
  t.u_t = t.re_t * t.nu_lat / d_lat;
  return t;
}

struct BounceSetup {
  SimParams sim;
  Particle sphere;
  UnitMap units;       // lattice-only scenario: identity mapping
  BounceTarget target;
  int max_steps = 0;
  real t_relax = 0;    // Stokes response time in steps
};

inline BounceSetup make_bounce_setup(const BounceParams& bp) {
  const int nxy = static_cast<int>(
      std::llround(real(bp.box_xy_diameters) * bp.d_lat));
  const int nz = static_cast<int>(
      std::llround(real(bp.box_z_diameters) * bp.d_lat));
  if (std::fabs(real(nxy) - real(bp.box_xy_diameters) * bp.d_lat) > real(1e-9) ||
      std::fabs(real(nz) - real(bp.box_z_diameters) * bp.d_lat) > real(1e-9)) {
    fail(ErrorCategory::config, "box edges must be whole numbers of cells");
  }

  BounceSetup s;
  s.target = bounce_target(bp.stokes_target, bp.d_lat, bp.g_lat,
                           bp.rho_r_default, bp.re_cap);

  s.sim.grid = GridSpec{nxy, nxy, nz,
                        {AxisBoundary::walls, AxisBoundary::walls,
                         AxisBoundary::walls}};
  s.sim.mu_0 = s.target.nu_lat;  // rho_f = 1
  s.sim.rho_f = 1;
  s.sim.gravity = Vec3{0, 0, -bp.g_lat};
  s.sim.gravity_on_fluid = false;
  s.sim.n_int = bp.n_int;
  s.sim.n_dem = bp.n_dem;
  s.sim.use_lift = bp.use_lift;
  s.sim.use_added_mass = bp.use_added_mass;
  s.sim.use_les = bp.use_les;
  s.sim.use_eilers = bp.use_eilers;

  // Wall contact: the effective mass is the sphere mass and the collision
  // time resolves d_p/dx fluid steps.
  const real m = s.target.rho_r * sphere_volume(bp.d_lat);
  s.sim.dem = derive_contact_params(m, bp.e_n, bp.d_lat, bp.mu_c);
  s.sim.lub.mu_0 = s.sim.mu_0;
  s.sim.lub.h_c = bp.h_c_over_d * bp.d_lat;

  s.sphere.d = bp.d_lat;
  s.sphere.rho = s.target.rho_r;
  s.sphere.x = Vec3{real(0.5) * real(nxy), real(0.5) * real(nxy),
                    real(nz) - bp.drop_below_top_diameters * bp.d_lat};

  s.t_relax = stokes_relaxation_time(s.target.rho_r, bp.d_lat, s.sim.mu_0);
  const real drop = s.sphere.x.z - real(0.5) * bp.d_lat;
  s.max_steps = static_cast<int>(std::llround(
      bp.max_steps_safety * (drop / s.target.u_t + real(10) * s.t_relax)));
  return s;
}

struct BounceReport {
  bool completed = false;   // restitution determined (bounced or settled)
  real e_wet = 0;
  real terminal_speed = 0;  // measured approach speed (lattice)
  real stokes_measured = 0;
  real re_measured = 0;
  int steps = 0;
  BounceTarget target;
  std::uint64_t final_state_hash = 0;
};

template <class F>
inline BounceReport run_bounce(const BounceParams& bp, F&& on_step) {
  BounceSetup s = make_bounce_setup(bp);
  Simulation sim(s.sim, {s.sphere});
  BounceObserver obs(bp.d_lat);

  BounceReport r;
  r.target = s.target;
  int step = 0;
  for (; step < s.max_steps && !obs.done(); ++step) {
    sim.step();
    obs.record(sim.particles()[0].u, sim.wall_contact_in_last_step());
    on_step(sim, step);
  }

  r.steps = step;
  r.terminal_speed = obs.terminal_speed();
  r.final_state_hash = sim.state_hash();
  if (obs.done()) {
    r.completed = true;
    r.e_wet = obs.wet_restitution();
  } else if (obs.contact_seen() &&
             std::fabs(sim.particles()[0].u.z) <
                 real(0.02) * obs.terminal_speed()) {
    // Settled onto the wall without a measurable rebound.
    r.completed = true;
    r.e_wet = 0;
  }
  if (r.terminal_speed > real(0)) {
    r.re_measured = r.terminal_speed * bp.d_lat / s.sim.mu_0;
    r.stokes_measured = stokes_number(s.target.rho_r, real(1), bp.d_lat,
                                      r.terminal_speed, s.sim.mu_0);
  }
  return r;
}

}  // namespace lbdem

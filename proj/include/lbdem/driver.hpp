#pragma once

// Coupled fluid-particle time stepper.
//
// One fluid step of size dt (= 1 in lattice units) contains n_int
// interaction subcycles; each subcycle refreshes the hydrodynamic forces
// on the particles and then runs n_dem contact substeps during which
// those forces stay frozen and only collision and lubrication forces are
// recomputed. The full step:
//
//   1. Evaluate the material derivative Du_f/Dt once (backward time
//      difference plus convective term). It is deliberately not refreshed
//      inside the subcycles: the added-mass force reacting to force-induced
//      velocity changes is a known positive feedback loop.
//   2. Per subcycle: evaluate u_f, grad P, curl u_f; compute lift and
//      added-mass per particle and distribute their reactions; reevaluate
//      u_f with the updated force field; compute pressure-gradient force
//      (no reaction: the fluid already carries its own pressure gradient)
//      and drag (reaction distributed); add the static weight/driving
//      terms; then run the DEM substeps and redeposit the solid volume
//      fraction from the moved particles.
//   3. Per cell: effective viscosity (volume-fraction correction plus
//      optional Smagorinsky eddy viscosity) -> relaxation time tau_e.
//   4. One collide-stream update of the PDF field.
//
// Force bookkeeping for a body-driven fluid: cells receive eps_f * f_b
// where f_b = body_force + (gravity_on_fluid ? rho_f * gravity : 0), and
// every particle receives V_p * body_force, the displaced-volume share of
// the driving force. With that pairing the volume integral of the driving
// terms over both phases is exactly (body_force * V_domain), independent
// of where the particles sit, and a counter-balanced setup (body_force
// chosen to offset the submerged particle weight) has zero net momentum
// input. Buoyancy is explicit ((rho_p - rho_f) V g on the particle) when
// the fluid does not carry gravity, and emerges from the resolved
// hydrostatic pressure gradient via the pressure-gradient force when it
// does; the two paths are never combined.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lbdem/core.hpp"
#include "lbdem/dem.hpp"
#include "lbdem/fastlog.hpp"
#include "lbdem/forces.hpp"
#include "lbdem/grid.hpp"
#include "lbdem/kernel.hpp"
#include "lbdem/lattice.hpp"
#include "lbdem/lbm.hpp"
#include "lbdem/lubrication.hpp"
#include "lbdem/neighbor.hpp"
#include "lbdem/operators.hpp"
#include "lbdem/viscosity.hpp"

namespace lbdem {

struct SimParams {
  GridSpec grid;
  real mu_0 = real(1) / real(6);  // dynamic viscosity, lattice units
  real rho_f = 1;                 // fluid density, lattice units
  Vec3 gravity{};                 // acts on particles; on the fluid only if
  bool gravity_on_fluid = false;  //   gravity_on_fluid is set
  Vec3 body_force{};              // volumetric driving force on the fluid
  int n_int = 10;                 // interaction subcycles per fluid step
  int n_dem = 50;                 // contact substeps per subcycle

  DemParams dem;
  LubricationParams lub;

  bool use_lift = true;
  bool use_added_mass = true;
  bool use_les = true;
  bool use_eilers = true;
  real c_am = real(0.5);
  real lift_curl_floor = real(1e-10);

  EilersSettings eilers;
  LesParams les;
  MacroscopicFieldSettings macro;

  void validate() const {
    grid.validate();
    if (!(mu_0 > real(0))) fail(ErrorCategory::config, "mu_0 must be positive");
    if (!(rho_f > real(0))) fail(ErrorCategory::config, "rho_f must be positive");
    if (n_int < 1) fail(ErrorCategory::config, "n_int must be at least 1");
    if (n_dem < 1) fail(ErrorCategory::config, "n_dem must be at least 1");
    if (lub.h_c < real(0)) fail(ErrorCategory::config, "h_c must be non-negative");
    if (c_am < real(0)) fail(ErrorCategory::config, "c_am must be non-negative");
  }
};

struct SimCounters {
  std::uint64_t steps = 0;
  std::uint64_t dudt_evaluations = 0;    // exactly one per step
  std::uint64_t support_rebuilds = 0;    // n_int per step (one per subcycle)
  std::uint64_t eps_floor_hits = 0;      // cells where the eps_f floor engaged
  std::uint64_t eilers_clamp_hits = 0;   // cells where eps_p hit the clamp
  std::uint64_t negative_a_sq = 0;       // lubrication squeeze sign anomalies
  std::uint64_t pair_contact_substeps = 0;  // substeps with >= 1 touching pair
  std::uint64_t wall_contact_substeps = 0;  // substeps with >= 1 wall touch
};

class Simulation {
 public:
  Simulation(const SimParams& prm, std::vector<Particle> particles)
      : prm_(prm),
        particles_(std::move(particles)),
        pdf_(prm.grid),
        eps_p_(prm.grid),
        rho_(prm.grid, real(1)),
        tau_e_(prm.grid, real(1)),
        p_(prm.grid),
        u_bar_(prm.grid),
        u_f_(prm.grid),
        u_f_prev_(prm.grid),
        dudt_(prm.grid),
        grad_p_(prm.grid),
        curl_u_(prm.grid),
        f_la_(prm.grid),
        f_d_(prm.grid),
        f_ext_(prm.grid) {
    prm_.validate();
    const std::size_t np = particles_.size();
    supports_.resize(np);
    volumes_.resize(np);
    hydro_la_.resize(np);
    hydro_d_.resize(np);
    for (std::size_t i = 0; i < np; ++i) {
      Particle& p = particles_[i];
      if (!(p.d > real(0)) || !(p.rho > real(0))) {
        fail(ErrorCategory::config, "particle diameter and density must be positive");
      }
      volumes_[i] = sphere_volume(p.d);
      p.x = prm_.grid.wrap_position(p.x);
      p.prev_velocity = p.u;  // first subcycle sees du_p/dt = 0
    }
    build_walls();
    rebuild_supports();

    // The PDF field starts as the exact rest equilibrium (all stored
    // deviations zero), so a force-free setup is a bitwise fixed point.
    // u_f_prev starts from the initial field: the first step sees a zero
    // time derivative instead of a spurious startup kick.
    compose_f_ext();
    counters_.eps_floor_hits += evaluate_velocity_fields(
        pdf_, eps_p_, f_ext_, prm_.macro, &rho_, &u_bar_, &u_f_prev_);
  }

  // Advances one fluid step (dt = 1).
  void step() {
    evaluate_material_derivative();

    pair_contact_last_step_ = false;
    wall_contact_last_step_ = false;

    for (int s = 0; s < prm_.n_int; ++s) {
      subcycle();
    }

    update_relaxation_time();
    collide_stream(pdf_, eps_p_, f_ext_, tau_e_, prm_.macro);
    ++counters_.steps;
  }

  // --- observers -------------------------------------------------------

  const std::vector<Particle>& particles() const { return particles_; }
  std::vector<Particle>& particles_mutable() { return particles_; }
  const SimParams& params() const { return prm_; }
  const SimCounters& counters() const { return counters_; }
  const GridSpec& grid() const { return prm_.grid; }

  const ScalarField& eps_p_field() const { return eps_p_; }
  const ScalarField& density_field() const { return rho_; }
  const ScalarField& tau_field() const { return tau_e_; }
  const Vec3Field& fluid_velocity_field() const { return u_f_; }
  const PdfField& pdf() const { return pdf_; }

  bool pair_contact_in_last_step() const { return pair_contact_last_step_; }
  bool wall_contact_in_last_step() const { return wall_contact_last_step_; }

  real total_fluid_mass() const { return pdf_.total_mass(); }

  // Sum of the interaction reaction force density applied to the fluid
  // (lift, added mass and drag reactions from the last subcycle).
  Vec3 total_reaction_force() const {
    Vec3 s{};
    const std::int64_t n = prm_.grid.cell_count();
    for (std::int64_t c = 0; c < n; ++c) s += f_la_[c] + f_d_[c];
    return s;
  }

  // Sum of the same interaction forces as applied to the particles. The
  // kernel transfer is conservative, so this equals the exact negative of
  // total_reaction_force up to round-off. The pressure-gradient force is
  // excluded on both sides by construction.
  Vec3 total_interaction_force_on_particles() const {
    Vec3 s{};
    for (std::size_t i = 0; i < particles_.size(); ++i) {
      s += hydro_la_[i] + hydro_d_[i];
    }
    return s;
  }

  real total_solid_volume_deposited() const {
    real v = 0;
    for (std::int64_t c = 0; c < prm_.grid.cell_count(); ++c) v += eps_p_[c];
    return v;
  }

  real total_particle_volume() const {
    real v = 0;
    for (real vp : volumes_) v += vp;
    return v;
  }

  Vec3 mean_particle_velocity() const {
    Vec3 m{};
    if (particles_.empty()) return m;
    for (const Particle& p : particles_) m += p.u;
    return m / real(particles_.size());
  }

  // Cell average of the fluid-phase velocity, evaluated fresh from the
  // current PDF state (the cached field is one force refresh stale).
  Vec3 mean_fluid_velocity() {
    compose_f_ext();
    Vec3 m{};
    const std::int64_t n = prm_.grid.cell_count();
    for (std::int64_t c = 0; c < n; ++c) {
      const Macroscopic mac = cell_macroscopic(pdf_, c, f_ext_[c]);
      m += mac.u_bar / floored_eps_f(eps_p_[c], prm_.macro.eps_f_floor);
    }
    return m / real(n);
  }

  // Fingerprint of the complete dynamic state, for reproducibility checks.
  std::uint64_t state_hash() const {
    std::uint64_t h = fnv1a(pdf_.data.data(), pdf_.data.size() * sizeof(real));
    for (const Particle& p : particles_) {
      h = fnv1a(&p.x, sizeof(Vec3), h);
      h = fnv1a(&p.u, sizeof(Vec3), h);
      h = fnv1a(&p.omega, sizeof(Vec3), h);
    }
    return h;
  }

 private:
  // Walls: two planes per non-periodic axis, at the domain faces, with
  // normals pointing inward. The no-slip fluid boundary from halfway
  // bounce-back sits on the same faces.
  void build_walls() {
    const Vec3 ext = prm_.grid.extent();
    for (int a = 0; a < 3; ++a) {
      if (prm_.grid.boundary[a] == AxisBoundary::periodic) continue;
      Vec3 n_lo{}, n_hi{};
      n_lo[a] = real(1);
      n_hi[a] = real(-1);
      Vec3 p_hi{};
      p_hi[a] = ext[a];
      walls_.push_back({Vec3{}, n_lo});
      walls_.push_back({p_hi, n_hi});
    }
  }

  void rebuild_supports() {
    for (std::size_t i = 0; i < particles_.size(); ++i) {
      build_support(prm_.grid, particles_[i].x, &supports_[i]);
    }
    deposit_solid_volume(supports_, volumes_, &eps_p_);
    ++counters_.support_rebuilds;
  }

  // f_ext = interaction reactions + eps_f-weighted volumetric driving
  // force. The raw eps_f is used here (the floor only guards divisions).
  void compose_f_ext() {
    Vec3 fb = prm_.body_force;
    if (prm_.gravity_on_fluid) fb += prm_.rho_f * prm_.gravity;
    const std::int64_t n = prm_.grid.cell_count();
    for (std::int64_t c = 0; c < n; ++c) {
      f_ext_[c] = f_la_[c] + f_d_[c] + (real(1) - eps_p_[c]) * fb;
    }
  }

  void refresh_velocity_fields() {
    compose_f_ext();
    counters_.eps_floor_hits += evaluate_velocity_fields(
        pdf_, eps_p_, f_ext_, prm_.macro, &rho_, &u_bar_, &u_f_);
  }

  // Du_f/Dt = (u_f - u_f_prev)/dt + (u_f . grad) u_f with dt = 1,
  // evaluated once per step and frozen across the subcycles.
  void evaluate_material_derivative() {
    refresh_velocity_fields();
    const GridSpec& g = prm_.grid;
    for (int k = 0; k < g.nz; ++k) {
      for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
          const std::int64_t c = g.index(i, j, k);
          dudt_[c] = (u_f_[c] - u_f_prev_[c]) +
                     convective_derivative(u_f_, g, i, j, k, u_f_[c]);
        }
      }
    }
    u_f_prev_ = u_f_;
    ++counters_.dudt_evaluations;
  }

  // Static per-particle force: weight (with explicit buoyancy only when
  // the fluid does not carry gravity) plus the displaced-volume share of
  // the fluid driving force.
  Vec3 static_force(const Particle& p, real volume) const {
    Vec3 f = volume * prm_.body_force;
    if (prm_.gravity_on_fluid) {
      f += p.rho * volume * prm_.gravity;
    } else {
      f += (p.rho - prm_.rho_f) * volume * prm_.gravity;
    }
    return f;
  }

  void subcycle() {
    const real dt_sub = real(1) / real(prm_.n_int);

    // Stored fields for this subcycle: u_f, grad P, curl u_f.
    refresh_velocity_fields();
    evaluate_scaled_pressure(pdf_, &p_);
    evaluate_gradient_field(p_, prm_.grid, &grad_p_);
    evaluate_curl_field(u_f_, prm_.grid, &curl_u_);

    // Lift and added mass, reactions distributed cell-wise.
    f_la_.fill(Vec3{});
    for (std::size_t i = 0; i < particles_.size(); ++i) {
      Particle& p = particles_[i];
      const KernelSupport& sup = supports_[i];
      Vec3 f_la{};
      if (prm_.use_lift) {
        const Vec3 u_f_p = interpolate(u_f_, sup);
        const Vec3 curl_p = interpolate(curl_u_, sup);
        f_la += lift_force(u_f_p, p.u, curl_p, p.d, prm_.mu_0, prm_.rho_f,
                           prm_.lift_curl_floor);
      }
      if (prm_.use_added_mass) {
        const Vec3 dufdt_p = interpolate(dudt_, sup);
        const Vec3 dupdt = (p.u - p.prev_velocity) * real(prm_.n_int);
        f_la += added_mass_force(dufdt_p, dupdt, prm_.c_am, prm_.rho_f, p.d);
      }
      hydro_la_[i] = f_la;
      if (prm_.use_lift || prm_.use_added_mass) {
        distribute(&f_la_, sup, -f_la);
      }
      p.prev_velocity = p.u;
    }

    // Velocity reevaluation between the accelerative forces and the drag
    // keeps the dominant drag consistent with the force field it reacts to.
    refresh_velocity_fields();

    f_d_.fill(Vec3{});
    for (std::size_t i = 0; i < particles_.size(); ++i) {
      Particle& p = particles_[i];
      const KernelSupport& sup = supports_[i];
      const Vec3 u_f_p = interpolate(u_f_, sup);
      const real eps_p_p = interpolate(eps_p_, sup);
      const Vec3 grad_p_p = interpolate(grad_p_, sup);
      const Vec3 f_d =
          drag_force(u_f_p, p.u, eps_p_p, p.d, prm_.mu_0, prm_.rho_f);
      hydro_d_[i] = f_d;
      distribute(&f_d_, sup, -f_d);
      p.ext_force = hydro_la_[i] + f_d +
                    pressure_gradient_force(grad_p_p, p.d) +
                    static_force(p, volumes_[i]);
    }

    run_dem_substeps(dt_sub);
    rebuild_supports();
  }

  void run_dem_substeps(real dt_sub) {
    const real dt_dem = dt_sub / real(prm_.n_dem);

    real d_max = 0;
    for (const Particle& p : particles_) d_max = std::max(d_max, p.d);
    const real skin =
        std::max(real(0.1) * d_max, real(4) * max_speed(particles_) * dt_sub);
    const real cutoff = d_max + prm_.lub.h_c + skin;
    pairs_.build(particles_, prm_.grid, cutoff);

    // Per-pair geometry that substeps reuse: touch distance, the outer
    // edge of the lubrication window, and the periodic image shift. The
    // shift stays valid for the whole subcycle because listed pairs sit
    // within the cutoff, far from the half-box image ambiguity, and move
    // a tiny fraction of the skin between rebuilds; freezing it lets the
    // substeps take plain coordinate differences. Positions are therefore
    // wrapped once at the end of the subcycle, not per substep.
    const std::size_t npairs = pairs_.pairs.size();
    pair_geom_.resize(npairs);
    for (std::size_t k = 0; k < npairs; ++k) {
      const auto [i, j] = pairs_.pairs[k];
      const real d_i = particles_[i].d, d_j = particles_[j].d;
      PairGeom& g = pair_geom_[k];
      g.i = i;
      g.j = j;
      g.touch_dist = real(0.5) * (d_i + d_j);
      const real window = g.touch_dist + prm_.lub.h_c;
      g.window_sq = window * window;
      g.mean_d = mean_diameter(d_i, d_j);
      const Vec3 raw = particles_[j].x - particles_[i].x;
      g.shift = prm_.grid.wrap_delta(raw) - raw;
    }

    // The substep loop is bound by particle loads, not arithmetic: the
    // wide particle records span several cache lines each. It therefore
    // runs on packed per-field copies, written back once per subcycle.
    const int n = static_cast<int>(particles_.size());
    dem_pos_.resize(n);
    dem_vel_.resize(n);
    dem_spin_.resize(n);
    dem_frc_.resize(n);
    dem_trq_.resize(n);
    dem_extf_.resize(n);
    dem_diam_.resize(n);
    dem_inv_m_.resize(n);
    dem_inv_i_.resize(n);
    for (int i = 0; i < n; ++i) {
      const Particle& p = particles_[i];
      dem_pos_[i] = p.x;
      dem_vel_[i] = p.u;
      dem_spin_[i] = p.omega;
      dem_extf_[i] = p.ext_force;
      dem_diam_[i] = p.d;
      dem_inv_m_[i] = real(1) / p.mass();
      dem_inv_i_[i] = real(1) / p.inertia();
    }

    const bool lub_on = prm_.lub.h_c > real(0);
    const GridSpec& grid = prm_.grid;

    // Film scratch sized to the worst case once per subcycle; substeps
    // write by index.
    act_i_.resize(npairs);
    act_j_.resize(npairs);
    act_n_.resize(npairs);
    act_upr_.resize(npairs);
    act_h_.resize(npairs);
    act_invh_.resize(npairs);
    act_mean_.resize(npairs);
    act_lg_.resize(npairs);
    act_f_.resize(npairs);
    act_neg_.resize(npairs);

    for (int sub = 0; sub < prm_.n_dem; ++sub) {
      for (int i = 0; i < n; ++i) {
        dem_frc_[i] = dem_extf_[i];
        dem_trq_[i] = Vec3{};
      }

      bool pair_touch = false;
      bool wall_touch = false;

      // Pass 1 walks the candidates, applies the rare contacts, and
      // collects the film-active pairs. Pass 2 is a bare log loop; the
      // scalar log call is the single most expensive operation here and
      // pipelines far better without force math interleaved. Pass 3
      // assembles and accumulates the film forces.
      std::size_t na = 0;
      for (const PairGeom& pg : pair_geom_) {
        const Vec3 delta = (dem_pos_[pg.j] - dem_pos_[pg.i]) + pg.shift;
        const real d2 = norm_sq(delta);
        if (d2 >= pg.window_sq) continue;
        const real dist = std::sqrt(d2);
        if (dist < pg.touch_dist) {
          // Same application as apply_pair_contact, on the packed state.
          const ContactForce c = compute_contact(
              delta, dist, dem_diam_[pg.i], dem_diam_[pg.j], dem_vel_[pg.i],
              dem_vel_[pg.j], dem_spin_[pg.i], dem_spin_[pg.j], prm_.dem);
          if (c.touching) {
            dem_frc_[pg.i] += c.force;
            dem_frc_[pg.j] -= c.force;
            const Vec3 t = cross(c.tangential, c.normal_dir);
            dem_trq_[pg.i] += real(0.5) * dem_diam_[pg.i] * t;
            dem_trq_[pg.j] += real(0.5) * dem_diam_[pg.j] * t;
            pair_touch = true;
          }
        } else if (lub_on) {
          const real h =
              lubrication_active_gap(dist - pg.touch_dist, prm_.lub);
          if (h > real(0)) {
            const real inv_h = real(1) / h;
            act_i_[na] = pg.i;
            act_j_[na] = pg.j;
            act_n_[na] = delta / dist;
            act_upr_[na] = dem_vel_[pg.i] - dem_vel_[pg.j];
            act_h_[na] = h;
            act_invh_[na] = inv_h;
            act_mean_[na] = pg.mean_d;
            act_lg_[na] = real(0.5) * pg.mean_d * inv_h;
            ++na;
          }
        }
      }

      for (std::size_t a = 0; a < na; ++a) act_lg_[a] = fast_log(act_lg_[a]);

      // Branch-free force map, then the scatter-accumulate.
      for (std::size_t a = 0; a < na; ++a) {
        const LubricationForce lf = lubrication_force_given_log(
            act_n_[a], act_h_[a], act_invh_[a], act_lg_[a], act_mean_[a],
            act_upr_[a], prm_.lub);
        act_f_[a] = lf.force;
        act_neg_[a] = lf.negative_a_sq ? 1 : 0;
      }
      for (std::size_t a = 0; a < na; ++a) {
        dem_frc_[act_i_[a]] += act_f_[a];
        dem_frc_[act_j_[a]] -= act_f_[a];
        counters_.negative_a_sq += act_neg_[a];
      }

      for (const WallPlane& w : walls_) {
        for (int i = 0; i < n; ++i) {
          const real d_i = dem_diam_[i];
          const real center_dist = dot(dem_pos_[i] - w.point, w.normal);
          if (center_dist < real(0.5) * d_i) {
            // Same virtual-partner construction as apply_wall_contact.
            const Vec3 delta = -(real(0.5) * d_i + center_dist) * w.normal;
            const ContactForce c =
                compute_contact(delta, d_i, d_i, dem_vel_[i], Vec3{},
                                dem_spin_[i], Vec3{}, prm_.dem);
            if (c.touching) {
              dem_frc_[i] += c.force;
              dem_trq_[i] +=
                  real(0.5) * d_i * cross(c.tangential, c.normal_dir);
              wall_touch = true;
            }
          } else if (lub_on) {
            const real gap = wall_gap(center_dist, d_i);
            if (gap < prm_.lub.h_c) {
              const LubricationForce lf = lubrication_force(
                  -center_dist * w.normal, center_dist, gap, real(2) * d_i,
                  dem_vel_[i], prm_.lub);
              if (lf.active) {
                dem_frc_[i] += lf.force;
                if (lf.negative_a_sq) ++counters_.negative_a_sq;
              }
            }
          }
        }
      }

      // Semi-implicit Euler, as integrate_particle.
      for (int i = 0; i < n; ++i) {
        dem_vel_[i] += (dt_dem * dem_inv_m_[i]) * dem_frc_[i];
        dem_spin_[i] += (dt_dem * dem_inv_i_[i]) * dem_trq_[i];
        dem_pos_[i] += dt_dem * dem_vel_[i];
      }

      if (pair_touch) {
        ++counters_.pair_contact_substeps;
        pair_contact_last_step_ = true;
      }
      if (wall_touch) {
        ++counters_.wall_contact_substeps;
        wall_contact_last_step_ = true;
      }
    }

    // One wrap per subcycle: the frozen image shifts keep pair deltas
    // exact while positions drift marginally outside the box, and the
    // kernel supports are rebuilt from wrapped positions right after.
    for (int i = 0; i < n; ++i) {
      Particle& p = particles_[i];
      p.x = grid.wrap_position(dem_pos_[i]);
      p.u = dem_vel_[i];
      p.omega = dem_spin_[i];
    }
  }

  // tau_e = tau_* + tau_t per cell: tau_* from the volume-fraction
  // corrected viscosity at the local density, tau_t from the Smagorinsky
  // closure on the non-equilibrium second moment.
  void update_relaxation_time() {
    compose_f_ext();
    const std::int64_t n = prm_.grid.cell_count();
    std::array<real, kQ> f_neq;
    for (std::int64_t c = 0; c < n; ++c) {
      const Macroscopic m = cell_macroscopic(pdf_, c, f_ext_[c]);
      const real mu_star =
          prm_.use_eilers
              ? eilers_viscosity(prm_.mu_0, eps_p_[c], prm_.eilers,
                                 &counters_.eilers_clamp_hits)
              : prm_.mu_0;
      const real tau_star = tau_from_viscosity(mu_star, m.rho);
      real tau_t = 0;
      if (prm_.use_les) {
        const real eps = floored_eps_f(eps_p_[c], prm_.macro.eps_f_floor);
        for (int q = 0; q < kQ; ++q) {
          f_neq[q] = pdf_.delta(c, q) - equilibrium_delta(q, m.rho, m.u_bar, eps);
        }
        tau_t = smagorinsky_tau_t(smagorinsky_qbar(f_neq), tau_star, m.rho,
                                  prm_.les);
      }
      tau_e_[c] = tau_star + tau_t;
    }
  }

  struct PairGeom {
    std::int32_t i = 0, j = 0;
    real touch_dist = 0;
    real window_sq = 0;
    real mean_d = 0;
    Vec3 shift{};  // periodic image offset, frozen for one subcycle
  };

  SimParams prm_;
  std::vector<Particle> particles_;
  std::vector<KernelSupport> supports_;
  std::vector<real> volumes_;
  std::vector<Vec3> hydro_la_;
  std::vector<Vec3> hydro_d_;
  std::vector<WallPlane> walls_;
  PairList pairs_;
  std::vector<PairGeom> pair_geom_;
  // Packed per-particle state for the DEM substep loop.
  std::vector<Vec3> dem_pos_, dem_vel_, dem_spin_, dem_frc_, dem_trq_,
      dem_extf_;
  std::vector<real> dem_diam_, dem_inv_m_, dem_inv_i_;
  // Film-active pair scratch, refilled per substep.
  std::vector<std::int32_t> act_i_, act_j_;
  std::vector<Vec3> act_n_, act_upr_;
  std::vector<real> act_h_, act_invh_, act_mean_, act_lg_;

  PdfField pdf_;
  ScalarField eps_p_, rho_, tau_e_, p_;
  Vec3Field u_bar_, u_f_, u_f_prev_, dudt_, grad_p_, curl_u_;
  Vec3Field f_la_, f_d_, f_ext_;

  SimCounters counters_;
  bool pair_contact_last_step_ = false;
  bool wall_contact_last_step_ = false;
};

}  // namespace lbdem

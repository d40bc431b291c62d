// Unit mapping and the benchmark helpers: conversion round trips, the
// settling correlations, the drag-balance solver, the bounce parameter
// solver, and the rebound measurement protocol.

#include <gtest/gtest.h>

#include <cmath>

#include "lbdem/benchmarks.hpp"
#include "lbdem/scenarios.hpp"
#include "lbdem/units.hpp"

namespace lbdem {
namespace {

TEST(Units, ConversionRoundTripsAreExactToRoundOff) {
  const UnitMap m{1.4e-3, 5.34249977e-4, 1000.0};
  auto roundtrip = [](real got, real want) {
    EXPECT_NEAR(got, want, 1e-12 * std::abs(want));
  };
  roundtrip(m.length_to_si(m.length_to_lattice(0.35e-3)), 0.35e-3);
  roundtrip(m.time_to_si(m.time_to_lattice(2.7)), 2.7);
  roundtrip(m.velocity_to_si(m.velocity_to_lattice(0.0488)), 0.0488);
  roundtrip(m.acceleration_to_si(m.acceleration_to_lattice(9.81)), 9.81);
  roundtrip(m.density_to_si(m.density_to_lattice(2500.0)), 2500.0);
  roundtrip(m.kinematic_viscosity_to_si(m.kinematic_viscosity_to_lattice(1e-6)),
            1e-6);
  roundtrip(m.dynamic_viscosity_to_si(m.dynamic_viscosity_to_lattice(1e-3)),
            1e-3);
  roundtrip(m.force_to_si(m.force_to_lattice(3.2e-7)), 3.2e-7);
  roundtrip(m.force_density_to_si(m.force_density_to_lattice(14.7)), 14.7);
  roundtrip(m.pressure_to_si(m.pressure_to_lattice(101.3)), 101.3);
}

TEST(Units, ViscosityMatchingFixesTheTimeStep) {
  // Water on a 0.7 mm grid, lattice viscosity chosen by the solver.
  const UnitMap m = UnitMap::from_viscosity(7e-4, 1000.0, 1e-6, 7.70962819e-4);
  EXPECT_DOUBLE_EQ(m.dx, 7e-4);
  EXPECT_DOUBLE_EQ(m.rho_scale, 1000.0);
  EXPECT_NEAR(m.dt, 3.77771781e-4, 1e-11);
  // The mapping reproduces the requested lattice viscosity exactly.
  EXPECT_NEAR(m.kinematic_viscosity_to_lattice(1e-6), 7.70962819e-4,
              1e-12 * 7.70962819e-4);

  try {
    UnitMap::from_viscosity(-1.0, 1000.0, 1e-6, 1e-3);
    FAIL() << "expected a config error";
  } catch (const SimError& e) {
    EXPECT_EQ(e.category(), ErrorCategory::config);
  }
}

TEST(Units, DynamicAndKinematicViscosityAgree) {
  const UnitMap m{1.4e-3, 5.34e-4, 1000.0};
  // mu = rho nu with rho_si = rho_scale (lattice density 1).
  const real mu_lat = m.dynamic_viscosity_to_lattice(1e-3);
  const real nu_lat = m.kinematic_viscosity_to_lattice(1e-6);
  EXPECT_NEAR(mu_lat, nu_lat, 1e-14 * nu_lat);
}

TEST(SettlingCorrelations, RichardsonZakiBranches) {
  EXPECT_DOUBLE_EQ(richardson_zaki_exponent(0.1), 4.65);
  EXPECT_NEAR(richardson_zaki_exponent(0.5), 4.441402749, 1e-8);
  EXPECT_DOUBLE_EQ(richardson_zaki_exponent(1.0), 4.45);
  EXPECT_NEAR(richardson_zaki_exponent(17.068927), 3.350729652, 1e-8);
  EXPECT_DOUBLE_EQ(richardson_zaki_exponent(500.0), 2.39);
  EXPECT_DOUBLE_EQ(richardson_zaki_exponent(1000.0), 2.39);
}

TEST(SettlingCorrelations, HinderedRatioPinnedValues) {
  const real kappa = 3.350729652;
  EXPECT_NEAR(hindered_settling_ratio(0.1, kappa), 0.702552882, 1e-8);
  EXPECT_NEAR(hindered_settling_ratio(0.3, kappa), 0.302667235, 1e-8);
  EXPECT_NEAR(hindered_settling_ratio(0.5, kappa), 0.098023424, 1e-8);
  EXPECT_DOUBLE_EQ(hindered_settling_ratio(0.0, kappa), 1.0);
}

TEST(DragBalance, GlassSphereInWater) {
  // 0.35 mm glass sphere in water under standard gravity.
  const DragBalance b = terminal_velocity(0.35e-3, 2500.0, 1000.0, 1e-3, 9.81);
  EXPECT_NEAR(b.u_t, 0.048768363, 1e-7);
  EXPECT_NEAR(b.re_t, 17.068927, 1e-5);

  // A finite solid fraction hinders the settling.
  const DragBalance h =
      terminal_velocity(0.35e-3, 2500.0, 1000.0, 1e-3, 9.81, 0.3);
  EXPECT_LT(h.u_t, b.u_t);

  try {
    terminal_velocity(0.35e-3, 900.0, 1000.0, 1e-3, 9.81);
    FAIL() << "expected a config error";
  } catch (const SimError& e) {
    EXPECT_EQ(e.category(), ErrorCategory::config);
  }
}

TEST(StokesHelpers, RelaxationTimeAndStokesNumber) {
  // Lattice mapping of the suspension case at d = 0.5 cells.
  EXPECT_NEAR(stokes_relaxation_time(2.5, 0.5, 7.70962819e-4), 45.037, 1e-2);
  // St = rho_p u d / (9 mu); conditions of the Stokes-128 bounce row.
  EXPECT_NEAR(stokes_number(8.0, 1.0, 0.5, 0.022443, 7.792581e-5), 128.0,
              0.02);
  EXPECT_DOUBLE_EQ(stokes_number(2.0, 1.0, 1.0, 0.009, 0.001), 2.0);
}

TEST(BounceTargeting, FrozenParameterRows) {
  // Default density ratio 8 until the Reynolds cap at 180 binds.
  const BounceTarget t10 = bounce_target(10.0, 0.5, 1e-4, 8.0, 180.0);
  EXPECT_DOUBLE_EQ(t10.rho_r, 8.0);
  EXPECT_DOUBLE_EQ(t10.re_t, 11.25);
  EXPECT_NEAR(t10.nu_lat, 4.911693e-4, 1e-10);
  EXPECT_NEAR(t10.u_t, 0.011051, 1e-6);

  const BounceTarget t30 = bounce_target(30.0, 0.5, 1e-4, 8.0, 180.0);
  EXPECT_DOUBLE_EQ(t30.rho_r, 8.0);
  EXPECT_DOUBLE_EQ(t30.re_t, 33.75);
  EXPECT_NEAR(t30.nu_lat, 2.317086e-4, 1e-10);
  EXPECT_NEAR(t30.u_t, 0.015640, 1e-6);

  const BounceTarget t128 = bounce_target(128.0, 0.5, 1e-4, 8.0, 180.0);
  EXPECT_DOUBLE_EQ(t128.rho_r, 8.0);
  EXPECT_DOUBLE_EQ(t128.re_t, 144.0);
  EXPECT_NEAR(t128.nu_lat, 7.792581e-5, 1e-11);
  EXPECT_NEAR(t128.u_t, 0.022443, 1e-6);

  const BounceTarget t600 = bounce_target(600.0, 0.5, 1e-4, 8.0, 180.0);
  EXPECT_DOUBLE_EQ(t600.re_t, 180.0);  // cap binds
  EXPECT_DOUBLE_EQ(t600.rho_r, 30.0);  // 9 St / Re
  EXPECT_NEAR(t600.nu_lat, 1.331103e-4, 1e-10);
  EXPECT_NEAR(t600.u_t, 0.047920, 1e-6);

  // Self-consistency: the returned state solves the drag balance.
  const real weight =
      (t128.rho_r - 1.0) * sphere_volume(0.5) * 1e-4;
  const real drag = 3.0 * pi() * 0.5 * t128.nu_lat *
                    drag_cd0(t128.re_t) * t128.u_t;
  EXPECT_NEAR(drag, weight, 1e-10 * weight);

  try {
    bounce_target(0.0, 0.5, 1e-4, 8.0, 180.0);
    FAIL() << "expected a config error";
  } catch (const SimError& e) {
    EXPECT_EQ(e.category(), ErrorCategory::config);
  }
}

TEST(BounceMeasurement, ObserverProtocol) {
  // Synthetic trace, d_p = 10: fall to speed 1, three contact steps,
  // release, sample at release + 0.1 d_p / u_T = release + 1 step.
  BounceObserver obs(10.0);
  obs.record(Vec3{0.0, 0.0, -0.2}, false);   // step 0
  obs.record(Vec3{0.0, 0.0, -0.6}, false);   // step 1
  obs.record(Vec3{0.0, 0.0, -1.0}, false);   // step 2
  EXPECT_FALSE(obs.contact_seen());
  obs.record(Vec3{0.0, 0.0, -0.9}, true);    // step 3, impact
  EXPECT_TRUE(obs.contact_seen());
  EXPECT_FALSE(obs.done());
  obs.record(Vec3{0.0, 0.0, 0.2}, true);     // step 4, still loaded
  obs.record(Vec3{0.0, 0.0, 0.6}, false);    // step 5, release
  EXPECT_FALSE(obs.done());
  obs.record(Vec3{0.0, 0.0, 0.5}, false);    // step 6, sampling instant
  ASSERT_TRUE(obs.done());
  EXPECT_EQ(obs.release_step(), 5);
  EXPECT_DOUBLE_EQ(obs.terminal_speed(), 1.0);
  EXPECT_DOUBLE_EQ(obs.rebound_velocity(), 0.5);
  EXPECT_DOUBLE_EQ(obs.wet_restitution(), 0.5);

  // Further samples leave the result alone.
  obs.record(Vec3{0.0, 0.0, -0.8}, false);
  EXPECT_DOUBLE_EQ(obs.wet_restitution(), 0.5);
}

TEST(BounceMeasurement, ObserverErrorPaths) {
  {
    // Contact without any prior downward motion has no approach speed.
    BounceObserver obs(10.0);
    obs.record(Vec3{0.0, 0.0, 0.1}, true);
    try {
      obs.record(Vec3{0.0, 0.0, 0.1}, false);
      FAIL() << "expected a domain error";
    } catch (const SimError& e) {
      EXPECT_EQ(e.category(), ErrorCategory::domain);
    }
  }
  {
    // Asking for the restitution before the sample exists.
    BounceObserver obs(10.0);
    obs.record(Vec3{0.0, 0.0, -0.5}, false);
    try {
      obs.wet_restitution();
      FAIL() << "expected a domain error";
    } catch (const SimError& e) {
      EXPECT_EQ(e.category(), ErrorCategory::domain);
    }
  }
}

TEST(Scenarios, HinderedSetupDerivedQuantities) {
  HinderedParams hp;  // defaults: d = 0.5 cells, 16 diameter box, glass/water
  const HinderedSetup s = make_hindered_setup(hp);
  EXPECT_EQ(s.sim.grid.nx, 8);
  EXPECT_TRUE(s.sim.grid.periodic(0));
  // dx = d_si / d_lat; dt from the gravity matching g_lat dx / g_si.
  EXPECT_NEAR(s.units.dx, 7.0e-4, 1e-15);
  EXPECT_NEAR(s.units.dt, 3.77771781e-4, 1e-11);
  EXPECT_NEAR(s.sim.mu_0, 7.70962819e-4, 1e-12);
  EXPECT_DOUBLE_EQ(s.rho_p_lat, 2.5);
  EXPECT_NEAR(s.t_stokes, 45.037, 1e-2);
  EXPECT_EQ(s.steps_total, 1351);
  EXPECT_NEAR(s.single_sphere.u_t, 2.63190161e-2, 1e-9);
  EXPECT_NEAR(s.single_sphere.re_t, 17.068927, 1e-4);
  // Lubrication window: one diameter, fluid viscosity.
  EXPECT_DOUBLE_EQ(s.sim.lub.h_c, 0.5);
  EXPECT_DOUBLE_EQ(s.sim.lub.mu_0, s.sim.mu_0);

  // The counter force balances the submerged weight per unit volume.
  const Vec3 fb = buoyant_counter_force(0.3, 2.5, 1.0, Vec3{0.0, 0.0, -0.002});
  EXPECT_DOUBLE_EQ(fb.z, 0.3 * 1.5 * 0.002);
  EXPECT_EQ(fb.x, 0.0);
}

TEST(Scenarios, HinderedSetupRejectsFractionalBoxes) {
  HinderedParams hp;
  hp.d_lat = 0.3;  // 16 * 0.3 = 4.8 cells: not a whole box edge
  try {
    make_hindered_setup(hp);
    FAIL() << "expected a config error";
  } catch (const SimError& e) {
    EXPECT_EQ(e.category(), ErrorCategory::config);
  }
}

TEST(Scenarios, BounceSetupGeometryAndContacts) {
  BounceParams bp;  // defaults: St 128, d = 0.5, 8 x 8 x 128 cells
  const BounceSetup s = make_bounce_setup(bp);
  EXPECT_EQ(s.sim.grid.nx, 8);
  EXPECT_EQ(s.sim.grid.nz, 128);
  EXPECT_FALSE(s.sim.grid.periodic(2));
  EXPECT_DOUBLE_EQ(s.sphere.d, 0.5);
  EXPECT_DOUBLE_EQ(s.sphere.rho, 8.0);
  // Drop height: three diameters below the top face.
  EXPECT_DOUBLE_EQ(s.sphere.x.z, 128.0 - 3.0 * 0.5);
  // Wall contact uses the full sphere mass and resolves d/dx fluid steps.
  const real m = 8.0 * sphere_volume(0.5);
  const real t_c = collision_time(s.sim.dem.k_n, s.sim.dem.xi_n, m);
  EXPECT_NEAR(t_c, 0.5, 1e-12);
  EXPECT_GT(s.max_steps, 0);
}

}  // namespace
}  // namespace lbdem

#pragma once

// Conversion between physical (SI) and lattice units. A mapping is fixed
// by three scales: dx (m per lattice length), dt (s per lattice step),
// and rho_scale (kg/m^3 per lattice density unit); every other quantity
// converts through products of powers of these. Conversions are single
// multiplications, so to_lattice followed by to_si is exact to round-off.

#include "lbdem/core.hpp"

namespace lbdem {

struct UnitMap {
  real dx = 1;         // m
  real dt = 1;         // s
  real rho_scale = 1;  // kg/m^3

  // Fixes dt so a physical kinematic viscosity nu_si maps onto the chosen
  // lattice viscosity nu_lat: nu_lat = nu_si dt / dx^2.
  static UnitMap from_viscosity(real dx, real rho_si, real nu_si,
                                real nu_lat) {
    if (!(dx > real(0)) || !(rho_si > real(0)) || !(nu_si > real(0)) ||
        !(nu_lat > real(0))) {
      fail(ErrorCategory::config, "unit scales must be positive");
    }
    return {dx, nu_lat * dx * dx / nu_si, rho_si};
  }

  real length_to_lattice(real v) const { return v / dx; }
  real length_to_si(real v) const { return v * dx; }

  real time_to_lattice(real v) const { return v / dt; }
  real time_to_si(real v) const { return v * dt; }

  real velocity_to_lattice(real v) const { return v * dt / dx; }
  real velocity_to_si(real v) const { return v * dx / dt; }

  real acceleration_to_lattice(real v) const { return v * dt * dt / dx; }
  real acceleration_to_si(real v) const { return v * dx / (dt * dt); }

  real density_to_lattice(real v) const { return v / rho_scale; }
  real density_to_si(real v) const { return v * rho_scale; }

  real kinematic_viscosity_to_lattice(real v) const { return v * dt / (dx * dx); }
  real kinematic_viscosity_to_si(real v) const { return v * dx * dx / dt; }

  real dynamic_viscosity_to_lattice(real v) const {
    return v * dt / (rho_scale * dx * dx);
  }
  real dynamic_viscosity_to_si(real v) const {
    return v * rho_scale * dx * dx / dt;
  }

  real force_to_lattice(real v) const {
    return v * dt * dt / (rho_scale * dx * dx * dx * dx);
  }
  real force_to_si(real v) const {
    return v * rho_scale * dx * dx * dx * dx / (dt * dt);
  }

  // Force per unit volume (N/m^3), the unit of the fluid driving force.
  real force_density_to_lattice(real v) const {
    return v * dt * dt / (rho_scale * dx);
  }
  real force_density_to_si(real v) const {
    return v * rho_scale * dx / (dt * dt);
  }

  real pressure_to_lattice(real v) const {
    return v * dt * dt / (rho_scale * dx * dx);
  }
  real pressure_to_si(real v) const {
    return v * rho_scale * dx * dx / (dt * dt);
  }
};

}  // namespace lbdem

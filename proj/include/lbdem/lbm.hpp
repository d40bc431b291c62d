#pragma once

// BGK lattice Boltzmann solver on D3Q19 for the generalized Navier-Stokes
// equations with spatially varying fluid volume fraction and force density.
//
// PDFs are stored zero-centered (g_q = f_q - w_q), the usual trick that
// keeps the uniform rest state an exact bitwise fixed point and removes a
// large constant from every arithmetic operation. All public reductions
// and accessors speak in absolute f_q.
//
// Streaming uses two buffers and a pull scheme: the updated value of cell
// x in direction q is read from x - c_q. A pull across a wall face turns
// into halfway bounce-back, i.e. the post-collision value of the opposite
// direction at x itself.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "lbdem/core.hpp"
#include "lbdem/grid.hpp"
#include "lbdem/lattice.hpp"

namespace lbdem {

struct PdfField {
  explicit PdfField(const GridSpec& grid)
      : g(grid), data(static_cast<std::size_t>(grid.cell_count()) * kQ, real(0)),
        scratch(data.size(), real(0)) {
    grid.validate();
  }

  // Zero-centered access (internal representation).
  real& delta(std::int64_t cell, int q) {
    return data[static_cast<std::size_t>(cell) * kQ + q];
  }
  real delta(std::int64_t cell, int q) const {
    return data[static_cast<std::size_t>(cell) * kQ + q];
  }

  // Absolute PDF value.
  real f(std::int64_t cell, int q) const { return delta(cell, q) + kW[q]; }

  void set_absolute(std::int64_t cell, int q, real value) {
    delta(cell, q) = value - kW[q];
  }

  // Initializes every cell to the equilibrium of (rho, u_bar) with the
  // given volume fraction. rho = 1, u = 0 produces an exactly zero
  // deviation field.
  void initialize_equilibrium(real rho, const Vec3& u_bar, real eps_f) {
    const std::int64_t n = g.cell_count();
    for (std::int64_t c = 0; c < n; ++c) {
      for (int q = 0; q < kQ; ++q) {
        delta(c, q) = equilibrium_delta(q, rho, u_bar, eps_f);
      }
    }
  }

  real total_mass() const {
    real m = 0;
    for (real v : data) m += v;
    return m + real(g.cell_count());  // add back the rest-state contribution
  }

  Vec3 total_momentum() const {
    Vec3 p{};
    const std::int64_t n = g.cell_count();
    for (std::int64_t c = 0; c < n; ++c) {
      for (int q = 1; q < kQ; ++q) {
        const real v = delta(c, q);
        p.x += v * real(kC[q][0]);
        p.y += v * real(kC[q][1]);
        p.z += v * real(kC[q][2]);
      }
    }
    return p;
  }

  GridSpec g;
  std::vector<real> data;
  std::vector<real> scratch;
};

// Cell-local moments from the zero-centered representation.
inline Macroscopic cell_macroscopic(const PdfField& pdf, std::int64_t cell,
                                    const Vec3& f_ext) {
  real drho = 0;
  Vec3 mom{};
  const real* gq = &pdf.data[static_cast<std::size_t>(cell) * kQ];
  for (int q = 0; q < kQ; ++q) {
    drho += gq[q];
    mom.x += gq[q] * real(kC[q][0]);
    mom.y += gq[q] * real(kC[q][1]);
    mom.z += gq[q] * real(kC[q][2]);
  }
  const real rho = real(1) + drho;
  if (!(rho > real(0))) {
    fail(ErrorCategory::numerical_blowup,
         "non-positive density at cell " + std::to_string(cell));
  }
  return {rho, (mom + real(0.5) * f_ext) / rho};
}

struct MacroscopicFieldSettings {
  real eps_f_floor = real(0.05);   // lower bound used in divisions by eps_f
  real max_u_bar = real(0.3);      // blow-up guard on |u_bar| (lattice units)
};

inline real floored_eps_f(real eps_p, real floor_value) {
  const real ef = real(1) - eps_p;
  return ef < floor_value ? floor_value : ef;
}

// Evaluates density, volume-averaged velocity u_bar and fluid-phase
// velocity u_f = u_bar/eps_f for every cell. Returns the number of cells
// where the eps_f floor engaged.
inline std::uint64_t evaluate_velocity_fields(const PdfField& pdf,
                                              const ScalarField& eps_p,
                                              const Vec3Field& f_ext,
                                              const MacroscopicFieldSettings& set,
                                              ScalarField* rho_out,
                                              Vec3Field* u_bar_out,
                                              Vec3Field* u_f_out) {
  std::uint64_t floor_hits = 0;
  const std::int64_t n = pdf.g.cell_count();
  for (std::int64_t c = 0; c < n; ++c) {
    const Macroscopic m = cell_macroscopic(pdf, c, f_ext[c]);
    if (rho_out) (*rho_out)[c] = m.rho;
    if (u_bar_out) (*u_bar_out)[c] = m.u_bar;
    if (u_f_out) {
      const real ef = real(1) - eps_p[c];
      const real ef_div = ef < set.eps_f_floor ? set.eps_f_floor : ef;
      if (ef < set.eps_f_floor) ++floor_hits;
      (*u_f_out)[c] = m.u_bar / ef_div;
    }
  }
  return floor_hits;
}

// Scaled pressure P = eps_f p = cs^2 rho (the eps_f factors cancel), the
// quantity whose gradient enters the pressure-gradient force.
inline void evaluate_scaled_pressure(const PdfField& pdf, ScalarField* p_out) {
  const std::int64_t n = pdf.g.cell_count();
  for (std::int64_t c = 0; c < n; ++c) {
    real drho = 0;
    const real* gq = &pdf.data[static_cast<std::size_t>(c) * kQ];
    for (int q = 0; q < kQ; ++q) drho += gq[q];
    (*p_out)[c] = kCs2 * (real(1) + drho);
  }
}

// One full update: per-cell BGK collision toward the eps_f-scaled
// equilibrium with forcing, then pull streaming with halfway bounce-back
// at wall faces. tau_e, eps_p and f_ext must be current.
inline void collide_stream(PdfField& pdf, const ScalarField& eps_p,
                           const Vec3Field& f_ext, const ScalarField& tau_e,
                           const MacroscopicFieldSettings& set = {}) {
  const GridSpec& g = pdf.g;
  const std::int64_t n = g.cell_count();
  std::vector<real>& post = pdf.scratch;

  for (std::int64_t c = 0; c < n; ++c) {
    const Vec3 fx = f_ext[c];
    const Macroscopic m = cell_macroscopic(pdf, c, fx);
    if (norm_sq(m.u_bar) > set.max_u_bar * set.max_u_bar) {
      fail(ErrorCategory::numerical_blowup,
           "|u_bar| exceeded " + std::to_string(set.max_u_bar) +
               " at cell " + std::to_string(c));
    }
    const real eps = floored_eps_f(eps_p[c], set.eps_f_floor);
    const real tau = tau_e[c];
    const real om = real(1) / tau;
    const real* gq = &pdf.data[static_cast<std::size_t>(c) * kQ];
    real* pq = &post[static_cast<std::size_t>(c) * kQ];
    for (int q = 0; q < kQ; ++q) {
      const real geq = equilibrium_delta(q, m.rho, m.u_bar, eps);
      pq[q] = gq[q] + om * (geq - gq[q]) + forcing_term(q, m.u_bar, eps, tau, fx);
    }
  }

  for (int k = 0; k < g.nz; ++k) {
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        const std::int64_t c = g.index(i, j, k);
        real* out = &pdf.data[static_cast<std::size_t>(c) * kQ];
        const real* self = &post[static_cast<std::size_t>(c) * kQ];
        out[0] = self[0];
        for (int q = 1; q < kQ; ++q) {
          const std::int64_t src =
              stream_source(g, i, j, k, kC[q][0], kC[q][1], kC[q][2]);
          out[q] = (src >= 0) ? post[static_cast<std::size_t>(src) * kQ + q]
                              : self[opposite(q)];
        }
      }
    }
  }
}

}  // namespace lbdem

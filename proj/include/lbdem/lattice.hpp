#pragma once

// D3Q19 lattice model: velocity set, weights, equilibrium distribution,
// Guo-style forcing, and macroscopic moments. The equilibrium and forcing
// carry the fluid-volume-fraction scaling of the generalized Navier-Stokes
// (porous-media) formulation: quadratic velocity terms are divided by eps_f.
//
// Lattice units throughout: dx = dt = 1, cs^2 = 1/3.

#include <array>

#include "lbdem/core.hpp"

namespace lbdem {

inline constexpr int kQ = 19;
inline constexpr real kCs2 = real(1) / real(3);

// Ordering: rest, 6 axis directions in +/- pairs, 12 edge diagonals in
// +/- pairs. Keeping opposites adjacent makes bounce-back indexing trivial
// (opposite(q) flips the low bit for q >= 1).
inline constexpr std::array<std::array<int, 3>, kQ> kC = {{
    {0, 0, 0},
    {1, 0, 0},  {-1, 0, 0},
    {0, 1, 0},  {0, -1, 0},
    {0, 0, 1},  {0, 0, -1},
    {1, 1, 0},  {-1, -1, 0},
    {1, -1, 0}, {-1, 1, 0},
    {1, 0, 1},  {-1, 0, -1},
    {1, 0, -1}, {-1, 0, 1},
    {0, 1, 1},  {0, -1, -1},
    {0, 1, -1}, {0, -1, 1},
}};

inline constexpr std::array<real, kQ> kW = {
    real(1) / 3,
    real(1) / 18, real(1) / 18, real(1) / 18,
    real(1) / 18, real(1) / 18, real(1) / 18,
    real(1) / 36, real(1) / 36, real(1) / 36, real(1) / 36,
    real(1) / 36, real(1) / 36, real(1) / 36, real(1) / 36,
    real(1) / 36, real(1) / 36, real(1) / 36, real(1) / 36,
};

constexpr int opposite(int q) { return q == 0 ? 0 : ((q - 1) ^ 1) + 1; }

constexpr Vec3 lattice_velocity(int q) {
  return {real(kC[q][0]), real(kC[q][1]), real(kC[q][2])};
}

// Equilibrium PDF with volume-fraction scaling:
//   feq_q = w_q rho (1 + c.u/cs2 + (c.u)^2/(2 eps cs4) - u.u/(2 eps cs2)).
// Zeroth moment is rho and first moment is rho*u for any eps_f in (0,1].
inline real equilibrium(int q, real rho, const Vec3& u_bar, real eps_f) {
  const real cu = real(kC[q][0]) * u_bar.x + real(kC[q][1]) * u_bar.y +
                  real(kC[q][2]) * u_bar.z;
  const real uu = dot(u_bar, u_bar);
  return kW[q] * rho *
         (real(1) + cu / kCs2 + cu * cu / (2 * eps_f * kCs2 * kCs2) -
          uu / (2 * eps_f * kCs2));
}

// Deviation of the equilibrium from the global rest state w_q (PDFs are
// stored zero-centered; see PdfField). Written so that rho = 1, u = 0
// yields exactly 0.0 in floating point, which makes the rest state a
// bitwise fixed point of collide+stream.
inline real equilibrium_delta(int q, real rho, const Vec3& u_bar, real eps_f) {
  const real cu = real(kC[q][0]) * u_bar.x + real(kC[q][1]) * u_bar.y +
                  real(kC[q][2]) * u_bar.z;
  const real uu = dot(u_bar, u_bar);
  return kW[q] * ((rho - real(1)) +
                  rho * (cu / kCs2 + cu * cu / (2 * eps_f * kCs2 * kCs2) -
                         uu / (2 * eps_f * kCs2)));
}

// Forcing operator (trapezoidal discrete-force scheme, volume-fraction
// scaled):
//   F_q = w_q (1 - 1/(2 tau_e)) [c/cs2 - u/(eps cs2) + (c.u)/(eps cs4) c] . f
// Its zeroth moment vanishes and its first moment is (1 - 1/(2 tau_e)) f,
// which together with the half-force velocity shift injects exactly f per
// unit volume per step.
inline real forcing_term(int q, const Vec3& u_bar, real eps_f, real tau_e,
                         const Vec3& f_ext) {
  const Vec3 c = lattice_velocity(q);
  const real cu = dot(c, u_bar);
  const Vec3 v = c * (real(1) / kCs2) - u_bar * (real(1) / (eps_f * kCs2)) +
                 c * (cu / (eps_f * kCs2 * kCs2));
  return kW[q] * (real(1) - real(1) / (2 * tau_e)) * dot(v, f_ext);
}

// Moments of an absolute PDF set, with the half-force velocity correction:
//   rho = sum f_q,  u_bar = (sum f_q c_q + f_ext/2) / rho.
struct Macroscopic {
  real rho;
  Vec3 u_bar;
};

inline Macroscopic macroscopic(const std::array<real, kQ>& f, const Vec3& f_ext) {
  real rho = 0;
  Vec3 mom{};
  for (int q = 0; q < kQ; ++q) {
    rho += f[q];
    mom.x += f[q] * real(kC[q][0]);
    mom.y += f[q] * real(kC[q][1]);
    mom.z += f[q] * real(kC[q][2]);
  }
  if (!(rho > real(0))) {
    fail(ErrorCategory::numerical_blowup, "non-positive density in moment evaluation");
  }
  const Vec3 u = (mom + real(0.5) * f_ext) / rho;
  return {rho, u};
}

}  // namespace lbdem

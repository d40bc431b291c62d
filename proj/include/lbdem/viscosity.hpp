#pragma once

// Effective viscosity (suspension rheology) and relaxation-time helpers:
//  - a modified Eilers fit raising the apparent viscosity with local solid
//    volume fraction,
//  - the BGK relation between kinematic viscosity and relaxation time,
//  - a Smagorinsky eddy-viscosity relaxation time computed in closed form
//    from the non-equilibrium momentum flux.

#include <array>
#include <cmath>
#include <cstdint>

#include "lbdem/core.hpp"
#include "lbdem/lattice.hpp"

namespace lbdem {

// The intrinsic viscosity / maximum-packing form used here is
//   mu* = mu_0 (1 + 0.5 [mu] eps_p / ((1 - eps_p)/eps_cp))^2,
// [mu] = 2.5, eps_cp = 0.64. Note the division by (1-eps_p)/eps_cp: this
// variant stays finite up to eps_p -> 1. The textbook Eilers denominator
// (1 - eps_p/eps_cp) diverges at eps_cp instead; it is kept available as
// an alternative because the two differ noticeably above eps_p ~ 0.4.
enum class EilersForm { as_fitted, classic_denominator };

struct EilersSettings {
  EilersForm form = EilersForm::as_fitted;
  real intrinsic_viscosity = real(2.5);
  real max_packing = real(0.64);
  real eps_p_clamp = real(0.62);  // guards the classic form's pole
};

inline real eilers_viscosity(real mu_0, real eps_p,
                             const EilersSettings& s = {},
                             std::uint64_t* clamp_counter = nullptr) {
  if (eps_p < real(0)) eps_p = real(0);
  if (eps_p > s.eps_p_clamp) {
    eps_p = s.eps_p_clamp;
    if (clamp_counter) ++(*clamp_counter);
  }
  real factor;
  if (s.form == EilersForm::as_fitted) {
    factor = real(1) + real(0.5) * s.intrinsic_viscosity * eps_p /
                           ((real(1) - eps_p) / s.max_packing);
  } else {
    factor = real(1) + real(0.5) * s.intrinsic_viscosity * eps_p /
                           (real(1) - eps_p / s.max_packing);
  }
  return mu_0 * factor * factor;
}

// nu = mu/rho = (tau - 1/2) cs^2  =>  tau = mu/(rho cs^2) + 1/2.
inline real tau_from_viscosity(real mu, real rho) {
  return mu / (rho * kCs2) + real(0.5);
}

inline real viscosity_from_tau(real tau, real rho) {
  return (tau - real(0.5)) * kCs2 * rho;
}

struct LesParams {
  real smagorinsky_constant = real(0.1);
  real filter_length = real(1);  // equals dx
};

// Second moment of the non-equilibrium part, its Frobenius-type magnitude
// Qbar = sqrt(2 sum_ab Q_ab Q_ab), and the turbulent relaxation time
//   tau_t = 1/2 (sqrt(tau*^2 + 2 sqrt(2) (Cs dx)^2 Qbar / (rho cs^4)) - tau*),
// the positive root of the quadratic coupling the eddy viscosity to the
// strain-rate magnitude evaluated at tau_e = tau* + tau_t.
inline real smagorinsky_qbar(const std::array<real, kQ>& f_neq) {
  real q[6] = {0, 0, 0, 0, 0, 0};  // xx, yy, zz, xy, xz, yz
  for (int i = 0; i < kQ; ++i) {
    const real cx = real(kC[i][0]), cy = real(kC[i][1]), cz = real(kC[i][2]);
    const real fn = f_neq[i];
    q[0] += cx * cx * fn;
    q[1] += cy * cy * fn;
    q[2] += cz * cz * fn;
    q[3] += cx * cy * fn;
    q[4] += cx * cz * fn;
    q[5] += cy * cz * fn;
  }
  const real sum2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2] +
                    2 * (q[3] * q[3] + q[4] * q[4] + q[5] * q[5]);
  return std::sqrt(2 * sum2);
}

inline real smagorinsky_tau_t(real qbar, real tau_star, real rho,
                              const LesParams& les) {
  const real csdx = les.smagorinsky_constant * les.filter_length;
  const real term = 2 * std::sqrt(real(2)) * csdx * csdx * qbar /
                    (rho * kCs2 * kCs2);
  return real(0.5) * (std::sqrt(tau_star * tau_star + term) - tau_star);
}

}  // namespace lbdem

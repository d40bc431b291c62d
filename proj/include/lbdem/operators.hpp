#pragma once

// Lattice differential operators built from the D3Q19 first-moment stencil:
//
//   grad phi(x) = (1/cs^2) sum_q w_q c_q phi(x + c_q)
//   curl u(x)   = (1/cs^2) sum_q w_q c_q x u(x + c_q)
//
// Both are exact for affine fields on the interior. Neighbors across a
// wall face are replaced by the boundary cell itself (zero-order
// extrapolation), which degrades the stencil to first order there.

#include <cstdint>

#include "lbdem/core.hpp"
#include "lbdem/grid.hpp"
#include "lbdem/lattice.hpp"

namespace lbdem {

inline Vec3 lattice_gradient(const ScalarField& phi, const GridSpec& g, int i,
                             int j, int k) {
  Vec3 grad{};
  for (int q = 1; q < kQ; ++q) {
    const std::int64_t nb =
        operator_neighbor(g, i, j, k, kC[q][0], kC[q][1], kC[q][2]);
    const real wphi = kW[q] * phi[nb];
    grad.x += wphi * real(kC[q][0]);
    grad.y += wphi * real(kC[q][1]);
    grad.z += wphi * real(kC[q][2]);
  }
  return grad / kCs2;
}

inline Vec3 lattice_curl(const Vec3Field& u, const GridSpec& g, int i, int j,
                         int k) {
  Vec3 curl{};
  for (int q = 1; q < kQ; ++q) {
    const std::int64_t nb =
        operator_neighbor(g, i, j, k, kC[q][0], kC[q][1], kC[q][2]);
    const Vec3 cq{real(kC[q][0]), real(kC[q][1]), real(kC[q][2])};
    curl = curl + kW[q] * cross(cq, u[nb]);
  }
  return curl / kCs2;
}

inline void evaluate_gradient_field(const ScalarField& phi, const GridSpec& g,
                                    Vec3Field* out) {
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        (*out)[g.index(i, j, k)] = lattice_gradient(phi, g, i, j, k);
}

inline void evaluate_curl_field(const Vec3Field& u, const GridSpec& g,
                                Vec3Field* out) {
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        (*out)[g.index(i, j, k)] = lattice_curl(u, g, i, j, k);
}

// Convective derivative (u . grad) u evaluated with the same stencil,
// one component at a time through a scratch scalar view.
inline Vec3 convective_derivative(const Vec3Field& u, const GridSpec& g, int i,
                                  int j, int k, const Vec3& u_here) {
  // grad of each velocity component
  Vec3 gx{}, gy{}, gz{};
  for (int q = 1; q < kQ; ++q) {
    const std::int64_t nb =
        operator_neighbor(g, i, j, k, kC[q][0], kC[q][1], kC[q][2]);
    const Vec3& un = u[nb];
    const real w = kW[q];
    const Vec3 cq{real(kC[q][0]), real(kC[q][1]), real(kC[q][2])};
    gx = gx + (w * un.x) * cq;
    gy = gy + (w * un.y) * cq;
    gz = gz + (w * un.z) * cq;
  }
  gx = gx / kCs2;
  gy = gy / kCs2;
  gz = gz / kCs2;
  return {dot(u_here, gx), dot(u_here, gy), dot(u_here, gz)};
}

}  // namespace lbdem

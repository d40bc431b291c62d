#pragma once

// Mapping between Lagrangian particles and the Eulerian grid.
//
// Each particle owns a compact interpolation/distribution stencil: every
// cell whose center lies within 1.5 dx of the particle center receives a
// weight from a radial three-point kernel, and the weights are normalized
// to sum to one per particle. The radial form of the kernel is not a
// partition of unity on a Cartesian grid, so the normalization is what
// guarantees exact conservation: interpolation reproduces constants and
// distribution deposits exactly the source value.
//
// Periodic axes use minimum-image offsets; on wall axes, cells beyond the
// domain are dropped from the stencil and the remaining weights are
// renormalized, which conserves the deposited quantity inside the domain.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "lbdem/core.hpp"
#include "lbdem/grid.hpp"

namespace lbdem {

// Radial kernel profile, support radius 1.5 (lattice units).
inline real kernel_weight(real r) {
  r = std::fabs(r);
  if (r <= real(0.5)) {
    return (real(1) / real(3)) * (real(1) + std::sqrt(real(1) - real(3) * r * r));
  }
  if (r <= real(1.5)) {
    const real s = real(1) - r;
    return (real(1) / real(6)) *
           (real(5) - real(3) * r - std::sqrt(real(1) - real(3) * s * s));
  }
  return real(0);
}

struct KernelSupport {
  static constexpr int kMaxCells = 64;
  int count = 0;
  std::array<std::int64_t, kMaxCells> cell{};
  std::array<real, kMaxCells> weight{};
};

// Builds the stencil for a particle at position x (lattice units, domain
// coordinates). Throws a domain error when no cell is in range, which can
// only happen if the particle left the domain through a wall.
inline void build_support(const GridSpec& g, const Vec3& x, KernelSupport* out) {
  out->count = 0;
  const int n[3] = {g.nx, g.ny, g.nz};
  const real xp[3] = {x.x, x.y, x.z};

  // Candidate index window: cell centers sit at i + 0.5, so |i + 0.5 - xp|
  // <= 1.5 confines i to a four-cell band per axis. On a periodic axis the
  // window must not exceed the ring length, or a wrapped cell would be
  // visited twice and its weight double-counted.
  int lo[3], hi[3];
  for (int a = 0; a < 3; ++a) {
    lo[a] = static_cast<int>(std::floor(xp[a] - real(2)));
    hi[a] = static_cast<int>(std::floor(xp[a] + real(1.5)));
    if (g.boundary[a] == AxisBoundary::periodic && hi[a] - lo[a] + 1 > n[a]) {
      hi[a] = lo[a] + n[a] - 1;
    }
  }

  real total = 0;
  for (int k = lo[2]; k <= hi[2]; ++k) {
    for (int j = lo[1]; j <= hi[1]; ++j) {
      for (int i = lo[0]; i <= hi[0]; ++i) {
        int idx[3] = {i, j, k};
        real d2 = 0;
        bool clipped = false;
        for (int a = 0; a < 3; ++a) {
          real delta = real(idx[a]) + real(0.5) - xp[a];
          if (g.boundary[a] == AxisBoundary::periodic) {
            // Minimum image: candidate window may reach past the box.
            const real L = real(n[a]);
            if (delta > real(0.5) * L) delta -= L;
            if (delta < real(-0.5) * L) delta += L;
            idx[a] = idx[a] % n[a];
            if (idx[a] < 0) idx[a] += n[a];
          } else if (idx[a] < 0 || idx[a] >= n[a]) {
            clipped = true;
            break;
          }
          d2 += delta * delta;
        }
        if (clipped || d2 >= real(2.25)) continue;
        const real w = kernel_weight(std::sqrt(d2));
        if (w <= real(0)) continue;
        out->cell[out->count] = g.index(idx[0], idx[1], idx[2]);
        out->weight[out->count] = w;
        ++out->count;
        total += w;
      }
    }
  }

  if (out->count == 0 || !(total > real(0))) {
    fail(ErrorCategory::domain, "particle has no grid support (left the domain)");
  }
  const real inv = real(1) / total;
  for (int s = 0; s < out->count; ++s) out->weight[s] *= inv;
}

inline real interpolate(const ScalarField& field, const KernelSupport& sup) {
  real v = 0;
  for (int s = 0; s < sup.count; ++s) v += sup.weight[s] * field[sup.cell[s]];
  return v;
}

inline Vec3 interpolate(const Vec3Field& field, const KernelSupport& sup) {
  Vec3 v{};
  for (int s = 0; s < sup.count; ++s) v = v + sup.weight[s] * field[sup.cell[s]];
  return v;
}

inline void distribute(ScalarField* field, const KernelSupport& sup, real value) {
  for (int s = 0; s < sup.count; ++s) (*field)[sup.cell[s]] += sup.weight[s] * value;
}

inline void distribute(Vec3Field* field, const KernelSupport& sup, const Vec3& value) {
  for (int s = 0; s < sup.count; ++s)
    (*field)[sup.cell[s]] = (*field)[sup.cell[s]] + sup.weight[s] * value;
}

// Deposits each particle's volume into the solid volume fraction field.
// Cell volume is 1 in lattice units, so the deposited density is V_p per
// unit weight; the per-particle weight normalization makes the field sum
// to the exact total particle volume.
inline void deposit_solid_volume(const std::vector<KernelSupport>& supports,
                                 const std::vector<real>& volumes,
                                 ScalarField* eps_p) {
  eps_p->fill(real(0));
  for (std::size_t p = 0; p < supports.size(); ++p) {
    distribute(eps_p, supports[p], volumes[p]);
  }
}

}  // namespace lbdem

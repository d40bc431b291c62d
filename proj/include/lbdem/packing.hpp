#pragma once

// Seeded generation of non-overlapping sphere packings at a prescribed
// mean solid volume fraction.
//
// Particles are first placed uniformly at random (overlaps allowed), then
// relaxed: every overlapping pair pushes its members apart along the
// center line by a fraction of the overlap, walls push inward, and the
// sweep repeats until the worst overlap falls below tolerance. The count
// is fixed up front from the target fraction, so relaxation changes only
// positions and the achieved fraction is exact by construction.
//
// Determinism: the generator is a fixed-seed mt19937_64 and uniform
// variates are derived from raw 64-bit draws (not through distribution
// objects, whose output is implementation-defined), so a seed fully
// determines the packing on any platform.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lbdem/core.hpp"
#include "lbdem/dem.hpp"
#include "lbdem/grid.hpp"
#include "lbdem/neighbor.hpp"

namespace lbdem {

struct PackingParams {
  real diameter = 1;
  real rho_p = 1;
  real target_eps_p = 0;       // mean solid volume fraction over the box
  std::uint64_t seed = 1;
  int max_sweeps = 50000;
  real overlap_tol = real(5e-4);  // admissible residual overlap, units of d
  real wall_margin = real(1e-3);  // initial clearance from walls, units of d
  real count_tolerance = real(0.005);  // |achieved - target| / target bound
};

inline real uniform01(std::mt19937_64& rng) {
  // 53 random mantissa bits -> [0, 1).
  return real(rng() >> 11) * real(0x1.0p-53);
}

// Number of spheres of diameter d giving mean fraction eps in volume v.
inline std::int64_t sphere_count_for_fraction(real eps, real box_volume,
                                              real diameter) {
  return std::llround(eps * box_volume / sphere_volume(diameter));
}

inline std::vector<Particle> pack_spheres(const GridSpec& g,
                                          const PackingParams& prm) {
  g.validate();
  if (!(prm.diameter > real(0)) || !(prm.rho_p > real(0))) {
    fail(ErrorCategory::config, "packing needs positive diameter and density");
  }
  if (!(prm.target_eps_p > real(0)) || prm.target_eps_p >= real(1)) {
    fail(ErrorCategory::config, "target solid fraction must be in (0, 1)");
  }

  const Vec3 ext = g.extent();
  const real box_volume = ext.x * ext.y * ext.z;
  const std::int64_t n =
      sphere_count_for_fraction(prm.target_eps_p, box_volume, prm.diameter);
  if (n < 1) {
    fail(ErrorCategory::packing_failure,
         "target fraction rounds to zero particles");
  }
  const real achieved =
      real(n) * sphere_volume(prm.diameter) / box_volume;
  if (std::fabs(achieved - prm.target_eps_p) >
      prm.count_tolerance * prm.target_eps_p) {
    fail(ErrorCategory::packing_failure,
         "particle count cannot match the target fraction to " +
             std::to_string(prm.count_tolerance * 100) + "%");
  }
  if (achieved > real(0.60)) {
    fail(ErrorCategory::packing_failure,
         "target fraction too close to jamming for relaxation packing");
  }

  const real d = prm.diameter;
  std::mt19937_64 rng(prm.seed);

  std::vector<Particle> ps(static_cast<std::size_t>(n));
  for (Particle& p : ps) {
    p.d = d;
    p.rho = prm.rho_p;
    for (int a = 0; a < 3; ++a) {
      const real L = real(g.extent(a));
      if (g.boundary[a] == AxisBoundary::periodic) {
        p.x[a] = uniform01(rng) * L;
      } else {
        const real lo = real(0.5) * d + prm.wall_margin * d;
        const real span = L - real(2) * lo;
        if (span <= real(0)) {
          fail(ErrorCategory::packing_failure,
               "domain too narrow for the sphere diameter between walls");
        }
        p.x[a] = lo + uniform01(rng) * span;
      }
    }
  }

  // Overlap relaxation. Each sweep rebuilds the neighbor list, pushes
  // overlapping pairs apart by relax * overlap / 2 each, pushes spheres
  // out of walls, and caps the per-sweep displacement to keep dense
  // regions from oscillating.
  const real relax = real(0.8);
  const real max_move = real(0.1) * d;
  const real tol = prm.overlap_tol * d;
  PairList pairs;
  std::vector<Vec3> disp(ps.size());

  for (int sweep = 0; sweep < prm.max_sweeps; ++sweep) {
    pairs.build(ps, g, d * real(1.05));
    real worst = 0;
    for (Vec3& v : disp) v = Vec3{};

    for (const auto& [i, j] : pairs.pairs) {
      const Vec3 delta = g.wrap_delta(ps[j].x - ps[i].x);
      const real dist = norm(delta);
      const real touch = real(0.5) * (ps[i].d + ps[j].d);
      if (dist >= touch) continue;
      const real overlap = touch - dist;
      if (overlap > worst) worst = overlap;
      Vec3 dir;
      if (dist > real(1e-12)) {
        dir = delta / dist;
      } else {
        // Coincident centers: split along a fixed axis chosen from the
        // indices so reruns stay deterministic.
        dir = Vec3{};
        dir[static_cast<int>((i + j) % 3)] = real(1);
      }
      const Vec3 push = (real(0.5) * relax * overlap) * dir;
      disp[i] -= push;
      disp[j] += push;
    }

    for (std::size_t i = 0; i < ps.size(); ++i) {
      for (int a = 0; a < 3; ++a) {
        if (g.boundary[a] == AxisBoundary::periodic) continue;
        const real L = real(g.extent(a));
        const real lo = ps[i].x[a] - real(0.5) * d;
        const real hi = L - ps[i].x[a] - real(0.5) * d;
        if (lo < real(0)) {
          disp[i][a] += relax * (-lo);
          if (-lo > worst) worst = -lo;
        }
        if (hi < real(0)) {
          disp[i][a] -= relax * (-hi);
          if (-hi > worst) worst = -hi;
        }
      }
    }

    if (worst <= tol) {
      for (Particle& p : ps) {
        p.u = Vec3{};
        p.omega = Vec3{};
        p.prev_velocity = Vec3{};
      }
      return ps;
    }

    for (std::size_t i = 0; i < ps.size(); ++i) {
      Vec3 m = disp[i];
      const real mm = norm(m);
      if (mm > max_move) m *= max_move / mm;
      ps[i].x = g.wrap_position(ps[i].x + m);
    }
  }

  fail(ErrorCategory::packing_failure,
       "overlap relaxation did not converge within the sweep budget");
}

}  // namespace lbdem

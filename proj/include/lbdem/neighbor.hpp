#pragma once

// Pair search for the DEM phase: a linked-cell binning pass produces a
// Verlet pair list with a safety skin. The list is rebuilt once per
// interaction subcycle; the skin must exceed twice the largest particle
// displacement accumulated between rebuilds, which the caller guarantees
// by sizing it from the current velocity maximum.
//
// Iteration order is strictly deterministic: bins are visited in index
// order with a fixed half stencil, particles inside a bin keep their
// insertion (index) order. Domains too small for 3 bins per periodic
// axis fall back to an all-pairs sweep to avoid double counting across
// the wrap.

#include <cstdint>
#include <utility>
#include <vector>

#include "lbdem/core.hpp"
#include "lbdem/dem.hpp"
#include "lbdem/grid.hpp"

namespace lbdem {

struct PairList {
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  real built_cutoff = 0;

  void build(const std::vector<Particle>& particles, const GridSpec& g,
             real cutoff) {
    pairs.clear();
    built_cutoff = cutoff;
    const int n = static_cast<int>(particles.size());
    if (n < 2) return;

    const Vec3 ext = g.extent();
    const real box[3] = {ext.x, ext.y, ext.z};
    int nb[3];
    bool use_cells = true;
    for (int a = 0; a < 3; ++a) {
      nb[a] = static_cast<int>(box[a] / cutoff);
      if (nb[a] < 1) nb[a] = 1;
      if (g.boundary[a] == AxisBoundary::periodic && nb[a] < 3) use_cells = false;
    }

    const real c2 = cutoff * cutoff;
    if (!use_cells || n < 32) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const Vec3 d = g.wrap_delta(particles[j].x - particles[i].x);
          if (norm_sq(d) < c2) pairs.emplace_back(i, j);
        }
      }
      return;
    }

    // Linked cells: head/next chains per bin, insertion in index order.
    const int nbins = nb[0] * nb[1] * nb[2];
    head_.assign(nbins, -1);
    next_.assign(n, -1);
    const real inv[3] = {nb[0] / box[0], nb[1] / box[1], nb[2] / box[2]};
    // Chains are built in reverse so traversal yields ascending indices.
    for (int i = n - 1; i >= 0; --i) {
      const real p[3] = {particles[i].x.x, particles[i].x.y, particles[i].x.z};
      int b[3];
      for (int a = 0; a < 3; ++a) {
        b[a] = static_cast<int>(p[a] * inv[a]);
        if (b[a] < 0) b[a] = 0;
        if (b[a] >= nb[a]) b[a] = nb[a] - 1;
      }
      const int bin = (b[2] * nb[1] + b[1]) * nb[0] + b[0];
      next_[i] = head_[bin];
      head_[bin] = i;
    }

    // Half stencil: self bin plus 13 forward neighbors.
    static constexpr int kHalf[13][3] = {
        {1, 0, 0},  {-1, 1, 0}, {0, 1, 0},  {1, 1, 0},  {-1, -1, 1},
        {0, -1, 1}, {1, -1, 1}, {-1, 0, 1}, {0, 0, 1},  {1, 0, 1},
        {-1, 1, 1}, {0, 1, 1},  {1, 1, 1}};

    for (int bz = 0; bz < nb[2]; ++bz) {
      for (int by = 0; by < nb[1]; ++by) {
        for (int bx = 0; bx < nb[0]; ++bx) {
          const int bin = (bz * nb[1] + by) * nb[0] + bx;
          // Within-bin pairs, ascending.
          for (int i = head_[bin]; i >= 0; i = next_[i]) {
            for (int j = next_[i]; j >= 0; j = next_[j]) {
              const Vec3 d = g.wrap_delta(particles[j].x - particles[i].x);
              if (norm_sq(d) < c2) pairs.emplace_back(i, j);
            }
          }
          for (const auto& off : kHalf) {
            int ox = bx + off[0], oy = by + off[1], oz = bz + off[2];
            if (!wrap_bin(ox, nb[0], g.boundary[0]) ||
                !wrap_bin(oy, nb[1], g.boundary[1]) ||
                !wrap_bin(oz, nb[2], g.boundary[2]))
              continue;
            const int obin = (oz * nb[1] + oy) * nb[0] + ox;
            for (int i = head_[bin]; i >= 0; i = next_[i]) {
              for (int j = head_[obin]; j >= 0; j = next_[j]) {
                const Vec3 d = g.wrap_delta(particles[j].x - particles[i].x);
                if (norm_sq(d) < c2) pairs.emplace_back(i, j);
              }
            }
          }
        }
      }
    }
  }

 private:
  static bool wrap_bin(int& b, int nb, AxisBoundary bc) {
    if (b >= 0 && b < nb) return true;
    if (bc != AxisBoundary::periodic) return false;
    b = (b % nb + nb) % nb;
    return true;
  }

  std::vector<int> head_;
  std::vector<int> next_;
};

inline real max_speed(const std::vector<Particle>& particles) {
  real m2 = 0;
  for (const Particle& p : particles) {
    const real s2 = norm_sq(p.u);
    if (s2 > m2) m2 = s2;
  }
  return std::sqrt(m2);
}

}  // namespace lbdem

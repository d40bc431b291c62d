#pragma once

// Structured grid bookkeeping shared by the fluid solver and the
// Euler-Lagrange transfer: extents, per-axis boundary handling
// (periodic or a pair of no-slip walls at the domain faces), and flat
// scalar/vector fields.
//
// Cell (i,j,k) has its center at (i+1/2, j+1/2, k+1/2); the domain spans
// [0, nx] x [0, ny] x [0, nz] in lattice lengths. Walls, when present,
// coincide with the domain faces, i.e. they sit halfway between the last
// cell center and the first ghost center, which is what halfway
// bounce-back assumes.

#include <cstdint>
#include <vector>

#include "lbdem/core.hpp"

namespace lbdem {

enum class AxisBoundary { periodic, walls };

struct GridSpec {
  int nx = 0, ny = 0, nz = 0;
  std::array<AxisBoundary, 3> boundary = {AxisBoundary::periodic,
                                          AxisBoundary::periodic,
                                          AxisBoundary::periodic};

  int extent(int axis) const { return axis == 0 ? nx : (axis == 1 ? ny : nz); }
  Vec3 extent() const { return {real(nx), real(ny), real(nz)}; }
  std::int64_t cell_count() const {
    return std::int64_t(nx) * std::int64_t(ny) * std::int64_t(nz);
  }
  std::int64_t index(int i, int j, int k) const {
    return (std::int64_t(k) * ny + j) * nx + i;
  }
  bool periodic(int axis) const { return boundary[axis] == AxisBoundary::periodic; }

  void validate() const {
    if (nx < 3 || ny < 3 || nz < 3) {
      fail(ErrorCategory::domain,
           "grid extents must be at least 3 cells per axis (kernel support "
           "and minimum-image assumptions)");
    }
  }

  // Minimum-image displacement component for particle-particle geometry.
  real wrap_delta(real d, int axis) const {
    if (!periodic(axis)) return d;
    const real L = real(extent(axis));
    if (d > real(0.5) * L) return d - L;
    if (d < real(-0.5) * L) return d + L;
    return d;
  }

  // Wraps a particle coordinate back into [0, L) on periodic axes.
  real wrap_position(real x, int axis) const {
    if (!periodic(axis)) return x;
    const real L = real(extent(axis));
    if (x >= L) return x - L;
    if (x < real(0)) return x + L;
    return x;
  }

  Vec3 wrap_delta(const Vec3& d) const {
    return {wrap_delta(d.x, 0), wrap_delta(d.y, 1), wrap_delta(d.z, 2)};
  }

  Vec3 wrap_position(const Vec3& x) const {
    return {wrap_position(x.x, 0), wrap_position(x.y, 1), wrap_position(x.z, 2)};
  }
};

// Neighbor lookup for streaming: either the wrapped in-domain index, or
// -1 when the step crosses a wall face (bounce-back case).
inline std::int64_t stream_source(const GridSpec& g, int i, int j, int k,
                                  int dx, int dy, int dz) {
  int c[3] = {i - dx, j - dy, k - dz};
  for (int a = 0; a < 3; ++a) {
    const int n = g.extent(a);
    if (c[a] < 0) {
      if (!g.periodic(a)) return -1;
      c[a] += n;
    } else if (c[a] >= n) {
      if (!g.periodic(a)) return -1;
      c[a] -= n;
    }
  }
  return g.index(c[0], c[1], c[2]);
}

// Neighbor lookup for finite-difference style lattice operators: periodic
// axes wrap, wall axes clamp to the adjacent in-domain cell (zero-order
// extrapolation of the sampled field across the wall).
inline std::int64_t operator_neighbor(const GridSpec& g, int i, int j, int k,
                                      int dx, int dy, int dz) {
  int c[3] = {i + dx, j + dy, k + dz};
  for (int a = 0; a < 3; ++a) {
    const int n = g.extent(a);
    if (c[a] < 0) c[a] = g.periodic(a) ? c[a] + n : 0;
    else if (c[a] >= n) c[a] = g.periodic(a) ? c[a] - n : n - 1;
  }
  return g.index(c[0], c[1], c[2]);
}

struct ScalarField {
  explicit ScalarField(const GridSpec& g, real init = real(0))
      : data(static_cast<std::size_t>(g.cell_count()), init) {}
  ScalarField() = default;

  void fill(real v) { data.assign(data.size(), v); }
  real& operator[](std::int64_t idx) { return data[static_cast<std::size_t>(idx)]; }
  real operator[](std::int64_t idx) const { return data[static_cast<std::size_t>(idx)]; }

  std::vector<real> data;
};

struct Vec3Field {
  explicit Vec3Field(const GridSpec& g, Vec3 init = Vec3{})
      : data(static_cast<std::size_t>(g.cell_count()), init) {}
  Vec3Field() = default;

  void fill(const Vec3& v) { data.assign(data.size(), v); }
  Vec3& operator[](std::int64_t idx) { return data[static_cast<std::size_t>(idx)]; }
  const Vec3& operator[](std::int64_t idx) const {
    return data[static_cast<std::size_t>(idx)];
  }

  std::vector<Vec3> data;
};

}  // namespace lbdem

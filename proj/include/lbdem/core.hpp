#pragma once

// Small shared pieces: 3-vector arithmetic, error categories, and a few
// numeric helpers. Everything runs in double precision; the engine is
// single-threaded by design so determinism reduces to fixed iteration order.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lbdem {

using real = double;

struct Vec3 {
  real x = 0.0, y = 0.0, z = 0.0;

  constexpr real& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr real operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  constexpr Vec3& operator*=(real s) { x *= s; y *= s; z *= s; return *this; }
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator*(Vec3 a, real s) { return a *= s; }
constexpr Vec3 operator*(real s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(Vec3 a, real s) { return a *= (real(1) / s); }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }

constexpr real dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline real norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
constexpr real norm_sq(const Vec3& a) { return dot(a, a); }

// Failure categories that must be distinguishable at the process boundary.
enum class ErrorCategory {
  config,
  numerical_blowup,
  packing_failure,
  io_failure,
  domain,
};

class SimError : public std::runtime_error {
 public:
  SimError(ErrorCategory cat, const std::string& what)
      : std::runtime_error(what), category_(cat) {}
  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory cat, const std::string& msg) {
  throw SimError(cat, msg);
}

constexpr real pi() { return 3.14159265358979323846; }

// FNV-1a over raw bytes, used for state fingerprints and config digests.
// Chainable: pass the previous hash as the seed of the next call.
inline std::uint64_t fnv1a(const void* data, std::size_t n,
                           std::uint64_t seed = 14695981039346656037ull) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

constexpr real sphere_volume(real diameter) {
  return pi() / real(6) * diameter * diameter * diameter;
}

// Solid sphere: I = (2/5) m (d/2)^2 = m d^2 / 10.
constexpr real sphere_inertia(real mass, real diameter) {
  return mass * diameter * diameter / real(10);
}

}  // namespace lbdem

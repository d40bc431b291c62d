#pragma once

// Inline natural log for positive, finite, normal doubles.
//
// The DEM substep loop evaluates one log per film-active pair and the
// libm call dominates its runtime; an inlineable implementation lets the
// compiler pipeline the batched loop. Classic construction: reduce
// x = 2^k m with m in [sqrt(1/2), sqrt(2)), take s = (m-1)/(m+1), expand
// log(m) = 2 atanh(s) with a minimax polynomial, and add k ln2 carried in
// a hi/lo split so the sum rounds once. Matches std::log to <= 2 ulp over
// the positive normal range (asserted by the unit suite).
//
// Preconditions: x normal and positive. No handling of zero, subnormals,
// infinities, or NaN; callers guarantee a bounded physical range.

#include <bit>
#include <cstdint>

#include "lbdem/core.hpp"

namespace lbdem {

inline double fast_log(double x) {
  // Mantissa of sqrt(2), as the 52 stored bits.
  constexpr std::uint64_t kSqrt2Mantissa = 0x6A09E667F3BCDull;
  constexpr std::uint64_t kMantissaMask = (std::uint64_t(1) << 52) - 1;

  const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
  const std::uint64_t man = bits & kMantissaMask;
  // Exponent chosen so m = x / 2^k lands in [sqrt(1/2), sqrt(2)).
  const std::int64_t high = man >= kSqrt2Mantissa ? 1 : 0;
  const double k =
      static_cast<double>(static_cast<std::int64_t>(bits >> 52) - 1023 + high);
  const double m = std::bit_cast<double>(
      man | (std::uint64_t(1023 - high) << 52));

  const double f = m - 1.0;
  const double s = f / (2.0 + f);
  const double z = s * s;
  const double w = z * z;
  // Minimax coefficients for 2 atanh(s) - 2s - s^3 terms, split into even
  // and odd powers so the two chains evaluate in parallel.
  const double t1 =
      w * (3.999999999940941908e-01 +
           w * (2.222219843214978396e-01 + w * 1.531383769920937332e-01));
  const double t2 =
      z * (6.666666666666735130e-01 +
           w * (2.857142874366239149e-01 +
                w * (1.818357216161805012e-01 + w * 1.479819860511658591e-01)));
  const double r = t1 + t2;
  const double hfsq = 0.5 * f * f;

  constexpr double kLn2Hi = 6.93147180369123816490e-01;
  constexpr double kLn2Lo = 1.90821492927058770002e-10;
  return k * kLn2Hi - ((hfsq - (s * (hfsq + r) + k * kLn2Lo)) - f);
}

}  // namespace lbdem

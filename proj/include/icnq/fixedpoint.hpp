#pragma once

#include <cmath>
#include <cstdint>

#include "icnq/common.hpp"

namespace icnq {

/// Fractional bits of the fixed-point mantissa.
inline constexpr int kMantissaBits = 31;

/// A real multiplier m decomposed as (m0 / 2^F) * 2^n0 with
/// 0.5 <= |m0 / 2^F| < 1. m0 == 0 encodes a dead channel (multiplier 0).
struct FixedPointMultiplier {
    int32_t m0 = 0;
    int8_t n0 = 0;

    double real() const { return std::ldexp(static_cast<double>(m0), n0 - kMantissaBits); }
    bool operator==(const FixedPointMultiplier&) const = default;
};

/// Splits a nonzero finite multiplier into normalized mantissa and
/// power-of-two exponent. Relative reconstruction error is at most 2^-(F-1).
/// Throws ValidationError for m == 0, non-finite m, or |n0| > 62.
FixedPointMultiplier decompose(double m);

/// floor(acc * m0 * 2^(n0 - F)) with exact integer arithmetic. The shift
/// rounds toward negative infinity, matching the floor-based activation
/// quantizer.
int64_t fixed_point_scale(int64_t acc, FixedPointMultiplier mult);

}  // namespace icnq

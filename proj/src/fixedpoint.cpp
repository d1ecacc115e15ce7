#include "icnq/fixedpoint.hpp"

#include <limits>

namespace icnq {

FixedPointMultiplier decompose(double m) {
    if (m == 0.0) {
        throw ValidationError("cannot decompose a zero multiplier (dead channel)");
    }
    if (!std::isfinite(m)) {
        throw ValidationError("cannot decompose a non-finite multiplier");
    }
    int exp = 0;
    const double frac = std::frexp(m, &exp);  // |frac| in [0.5, 1)
    int64_t code = std::llround(frac * static_cast<double>(int64_t{1} << kMantissaBits));
    if (code == (int64_t{1} << kMantissaBits) || code == -(int64_t{1} << kMantissaBits)) {
        code /= 2;
        ++exp;
    }
    if (exp > 62 || exp < -62) {
        throw ValidationError("multiplier exponent " + std::to_string(exp) +
                              " outside the supported range");
    }
    return {static_cast<int32_t>(code), static_cast<int8_t>(exp)};
}

int64_t fixed_point_scale(int64_t acc, FixedPointMultiplier mult) {
    const __int128 prod = static_cast<__int128>(acc) * mult.m0;
    const int shift = kMantissaBits - mult.n0;
    // Signed right shift is arithmetic, i.e. floor division by 2^shift.
    const __int128 scaled = shift >= 0 ? (prod >> shift) : (prod << -shift);
    constexpr __int128 lo = std::numeric_limits<int64_t>::min();
    constexpr __int128 hi = std::numeric_limits<int64_t>::max();
    if (scaled < lo || scaled > hi) {
        throw ValidationError("fixed-point product exceeds 64-bit range");
    }
    return static_cast<int64_t>(scaled);
}

}  // namespace icnq

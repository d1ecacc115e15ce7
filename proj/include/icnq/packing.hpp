#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "icnq/common.hpp"

namespace icnq {

/// Packs 2/4/8-bit codes into bytes, little-endian within each byte:
/// element k of a byte occupies bits [k*Q, (k+1)*Q).
std::vector<uint8_t> pack_codes(std::span<const uint8_t> codes, int bits);

/// Inverse of pack_codes. `count` is the number of elements to recover.
std::vector<uint8_t> unpack_codes(std::span<const uint8_t> packed, int bits, int64_t count);

/// Bytes needed to hold `count` codes at `bits` precision.
int64_t packed_size(int64_t count, int bits);

}  // namespace icnq

#include "icnq/packing.hpp"

namespace icnq {

namespace {

void check_bits(int bits) {
    if (!valid_bits(bits)) {
        throw ValidationError("bit width must be 2, 4, or 8, got " + std::to_string(bits));
    }
}

}  // namespace

int64_t packed_size(int64_t count, int bits) {
    check_bits(bits);
    return (count * bits + 7) / 8;
}

std::vector<uint8_t> pack_codes(std::span<const uint8_t> codes, int bits) {
    check_bits(bits);
    const uint8_t max_code = static_cast<uint8_t>((1 << bits) - 1);
    const int per_byte = 8 / bits;
    std::vector<uint8_t> out(static_cast<size_t>(packed_size(std::ssize(codes), bits)), 0);
    for (size_t i = 0; i < codes.size(); ++i) {
        if (codes[i] > max_code) {
            throw ValidationError("code " + std::to_string(codes[i]) + " exceeds " +
                                  std::to_string(bits) + "-bit range");
        }
        out[i / per_byte] |= static_cast<uint8_t>(codes[i] << (bits * (i % per_byte)));
    }
    return out;
}

std::vector<uint8_t> unpack_codes(std::span<const uint8_t> packed, int bits, int64_t count) {
    check_bits(bits);
    if (packed_size(count, bits) > std::ssize(packed)) {
        throw ValidationError("packed buffer too small for " + std::to_string(count) + " codes");
    }
    const uint8_t mask = static_cast<uint8_t>((1 << bits) - 1);
    const int per_byte = 8 / bits;
    std::vector<uint8_t> out(static_cast<size_t>(count));
    for (int64_t i = 0; i < count; ++i) {
        const uint8_t byte = packed[static_cast<size_t>(i / per_byte)];
        out[static_cast<size_t>(i)] = static_cast<uint8_t>(byte >> (bits * (i % per_byte))) & mask;
    }
    return out;
}

}  // namespace icnq

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "icnq/common.hpp"

namespace icnq {

enum class Granularity { PerLayer, PerChannel };

struct QuantScheme {
    Granularity granularity = Granularity::PerLayer;
    bool symmetric = false;
};

/// Uniform affine quantization parameters for one tensor. Codes live in the
/// unsigned domain [0, 2^bits - 1]; the real value of code T in channel
/// group g is scale[g] * (T - zero_point[g]).
///
/// Per-layer tensors carry one channel group; per-channel weight tensors
/// carry one group per output channel.
struct QuantSpec {
    int bits = 8;
    QuantScheme scheme;
    std::vector<double> scale;                      // S, > 0
    std::vector<int32_t> zero_point;                // Z, integer by construction
    std::vector<std::pair<double, double>> range;   // (a, b) per group

    int max_code() const { return (1 << bits) - 1; }
    size_t groups() const { return scale.size(); }
    double dequantize(int64_t code, size_t group = 0) const {
        return scale[group] * (static_cast<double>(code) - zero_point[group]);
    }
};

enum class FakeQuantMode { Weights, Activations };

/// Min/max range derivation for a weight tensor. The tensor is laid out
/// output-channel-major; per-channel groups are the contiguous slices of
/// length count / c_out.
///
/// Degenerate groups (min == max) get scale 1 so every value maps onto a
/// single code; constant channels carry no information.
QuantSpec derive_weight_spec(std::span<const float> weights, int bits, QuantScheme scheme,
                             int64_t c_out = 1);

/// Activation spec with range [0, b] and zero_point 0.
QuantSpec activation_spec(double b, int bits);

/// Network-input spec over an arbitrary range [a, b] (floor quantizer with an
/// integer zero point). Collapses to activation_spec when a == 0.
QuantSpec input_spec(double a, double b, int bits);

/// Rounds each weight onto its code. Ties round half away from zero.
std::vector<uint8_t> quantize_weights(std::span<const float> weights, const QuantSpec& spec);

/// Floor-based activation quantizer: clamp(floor(clamp(x, 0, b) / S), 0, 2^Q - 1).
/// floor instead of round keeps the deployed requantization a pure shift.
int quant_act(double x, const QuantSpec& spec);

/// Floor quantizer for the network input range (handles a != 0).
int quantize_input_value(double x, const QuantSpec& spec);

/// Quantize-then-dequantize in float; the projection applied by the
/// fake-quantized oracle pipeline.
std::vector<float> fake_quantize(std::span<const float> t, const QuantSpec& spec, FakeQuantMode mode);

}  // namespace icnq

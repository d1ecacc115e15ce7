#pragma once

#include <cstdint>
#include <vector>

#include "icnq/common.hpp"
#include "icnq/icn.hpp"

namespace icnq {

/// Quantized activation tensor. Codes are held one per byte while executing;
/// pack_codes/unpack_codes translate to the bit-packed storage form.
struct IntegerTensor {
    TensorShape shape;
    int bits = 8;
    std::vector<uint8_t> codes;
};

/// Integer convolution accumulators: phi = sum (X - z_x) * (W - z_w).
/// Padding taps contribute nothing, which equals padding with code z_x
/// (real zero). Accumulation is exact in signed 32-bit; the bound
/// taps * (2^Qx - 1) * (2^Qw - 1) < 2^31 is enforced at conversion time.
std::vector<int32_t> conv_int(const IntegerTensor& x, const IntegerLayer& layer);

/// Integer channel-normalization activation applied to raw accumulators.
IntegerTensor icn_activate(const std::vector<int32_t>& phi, const TensorShape& out_shape,
                           const IcnParams& params);

/// Classifier head: per-channel fixed-point scaling of (phi + bq) with no
/// zero-point and no clamp. Argmax over the result matches argmax over the
/// real logits because out_scale is positive.
std::vector<int64_t> scale_logits(const std::vector<int32_t>& phi, const IcnParams& params);

/// Global average pooling over codes with floor division; quantization
/// parameters pass through unchanged.
IntegerTensor avg_pool_int(const IntegerTensor& x);

/// Per-boundary outputs recorded for verification. For the final boundary of
/// a logits-mode graph the values are the unclamped scaled accumulators;
/// everywhere else they are activation codes.
struct IntRunResult {
    IntegerTensor output;                       // final activation codes (empty in logits mode)
    std::vector<int64_t> logits;                // final boundary values, always populated
    bool logits_mode = false;
    double logit_scale = 1.0;                   // real value of one final-boundary unit
    std::vector<std::vector<int64_t>> trace;    // one entry per layer when recorded
};

IntRunResult run_integer(const IntegerGraph& graph, const IntegerTensor& input,
                         bool record_trace = false);

/// Quantizes a float input tensor with the graph's input spec.
IntegerTensor quantize_input(const IntegerGraph& graph, const std::vector<float>& input);

/// Fake-quantized float oracle: fake-quantized weights, float convolution
/// and batch-norm, floor-based activation quantizer at every boundary.
/// Trace entries are the boundary codes (or floor-quantized logits) so they
/// compare directly against IntRunResult::trace.
struct FakeRunResult {
    std::vector<float> output;                  // final float values (dequantized codes or raw logits)
    std::vector<int64_t> codes;                 // final boundary codes / floor-quantized logits
    bool logits_mode = false;
    double logit_scale = 1.0;
    std::vector<std::vector<int64_t>> trace;
};

FakeRunResult run_fakequant(const NetworkGraph& graph, const BitPlan& plan, Mode mode,
                            const std::vector<float>& input, bool record_trace = false);

}  // namespace icnq

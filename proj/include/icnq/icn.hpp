#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "icnq/common.hpp"
#include "icnq/fixedpoint.hpp"
#include "icnq/graph.hpp"
#include "icnq/quant.hpp"

namespace icnq {

/// Integer channel-normalization parameters of one converted layer:
///   Y = clamp(z_y + floor(mult[c] * (phi + bq[c])), 0, 2^q_out - 1)
/// mult has length c_out, or length 1 when a single requantization
/// multiplier covers the whole layer (folded batch-norm, or no batch-norm
/// under per-layer weights).
struct IcnParams {
    std::vector<int32_t> bq;
    std::vector<FixedPointMultiplier> mult;
    int32_t z_y = 0;
    int q_out = 8;

    const FixedPointMultiplier& mult_for(int64_t channel) const {
        return mult.size() == 1 ? mult[0] : mult[static_cast<size_t>(channel)];
    }
};

/// Batch-norm merged into convolution parameters:
///   weights' = w * gamma/sigma, bias' = (B - mu) * gamma/sigma + beta.
struct FoldedLayer {
    std::vector<float> weights;
    std::vector<float> bias;
};

/// Folds the layer's batch-norm into its weights and bias.
/// Throws ValidationError if the layer has no batch-norm or sigma <= 0.
FoldedLayer fold_batchnorm(const LayerSpec& layer);

/// Derives the integer deployment parameters of one conv+bn+quant block:
///   M[c]  = (S_i * S_w[c] / S_o) * gamma[c]/sigma[c]
///   bq[c] = round((B[c] - mu[c] + beta[c]*sigma[c]/gamma[c]) / (S_i * S_w[c]))
/// A missing batch-norm acts as the identity (gamma = sigma = 1,
/// beta = mu = 0). Throws ValidationError on bq outside signed 32-bit or
/// gamma[c] == 0.
IcnParams build_icn(const LayerSpec& layer, const QuantSpec& in_spec, const QuantSpec& w_spec,
                    const QuantSpec& out_spec);

/// One layer of the integer-only deployment graph. Weight codes are
/// bit-packed in layout order; they are unpacked into 8-bit lanes at the
/// layer boundary before the MAC loop.
struct IntegerLayer {
    LayerKind kind = LayerKind::Conv2d;
    TensorShape in_shape, out_shape;
    int kernel_h = 1, kernel_w = 1;
    int stride_h = 1, stride_w = 1;
    int pad_h = 0, pad_w = 0;
    int in_channels = 0, out_channels = 0;
    int q_w = 8, q_in = 8, q_out = 8;
    std::vector<uint8_t> weight_codes;   // packed, absent for avg_pool
    std::vector<int32_t> z_w;            // length 1 (per-layer) or c_out (per-channel)
    int32_t z_x = 0;
    IcnParams icn;
    bool logits = false;                 // final classifier: scaled accumulators, no clamp
    double out_scale = 1.0;              // S_o; real output of code/logit k is k * out_scale

    int32_t z_w_for(int64_t channel) const {
        return z_w.size() == 1 ? z_w[0] : z_w[static_cast<size_t>(channel)];
    }
    int64_t weight_count() const {
        int64_t ci = kind == LayerKind::DepthwiseConv2d ? 1 : in_channels;
        return kind == LayerKind::AvgPool
                   ? 0
                   : static_cast<int64_t>(out_channels) * kernel_h * kernel_w * ci;
    }
};

struct IntegerGraph {
    Mode mode = Mode::PcIcn;
    TensorShape input_shape;
    QuantSpec input;  // 8-bit network input spec
    std::vector<IntegerLayer> layers;
};

/// Converts a float graph into an integer-only deployment graph under the
/// given bit plan. PlFb folds batch-norm before per-layer quantization;
/// the ICN modes keep batch-norm as per-channel integer parameters.
/// Mode::PcThresholds is not executable and is rejected here.
IntegerGraph convert_graph(const NetworkGraph& graph, const BitPlan& plan, Mode mode);

/// JSON manifest (graph.json) plus one binary blob (graph.bin) holding
/// packed weight codes, bq as int32 LE, m0 as int32 LE, n0 as int8, and
/// z_w as uint8 (per-layer) or int16 LE (per-channel).
void save_integer_graph(const IntegerGraph& graph, const std::filesystem::path& out_dir);
IntegerGraph load_integer_graph(const std::filesystem::path& manifest_path);

}  // namespace icnq

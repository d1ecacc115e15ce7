#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "icnq/common.hpp"

namespace icnq {

/// Channel-wise batch normalization parameters, all of length c_out.
/// sigma is the running standard deviation (> 0); gamma must be nonzero.
struct BatchNormParams {
    std::vector<float> gamma;
    std::vector<float> beta;
    std::vector<float> mu;
    std::vector<float> sigma;
};

/// One layer of a linear chain. Weights are output-channel-major:
/// c_out x k_h x k_w x c_in_slice, where c_in_slice is 1 for depthwise
/// layers and in_channels otherwise. avg_pool carries no parameters.
struct LayerSpec {
    int index = 0;
    LayerKind kind = LayerKind::Conv2d;
    int kernel_h = 1, kernel_w = 1;
    int stride_h = 1, stride_w = 1;
    int pad_h = 0, pad_w = 0;
    int in_channels = 0, out_channels = 0;
    std::vector<float> weights;
    std::vector<float> bias;               // empty means zero bias
    std::optional<BatchNormParams> bn;
    double act_a = 0.0;                    // calibrated output range, a == 0 (ReLU style)
    double act_b = 0.0;

    bool has_weights() const { return kind != LayerKind::AvgPool; }
    int weight_ci() const { return kind == LayerKind::DepthwiseConv2d ? 1 : in_channels; }
    int64_t weight_count() const {
        if (!has_weights()) return 0;
        return static_cast<int64_t>(out_channels) * kernel_h * kernel_w * weight_ci();
    }
    /// MAC taps per output element; bounds the integer accumulator.
    int64_t receptive_size() const {
        return static_cast<int64_t>(kernel_h) * kernel_w * weight_ci();
    }
};

/// A validated linear chain of layers plus the network input description.
/// Immutable after load; safe to share across threads.
struct NetworkGraph {
    std::vector<LayerSpec> layers;
    TensorShape input_shape;
    double input_a = 0.0;
    double input_b = 1.0;

    size_t num_layers() const { return layers.size(); }
};

struct ShapePair {
    TensorShape in;
    TensorShape out;
};

/// Activation shapes at every layer using out = floor((in + 2p - k)/s) + 1.
/// Throws ValidationError if any output dimension is not positive.
std::vector<ShapePair> infer_shapes(const NetworkGraph& graph);

/// Element counts of the L+1 activation boundaries (network input first).
std::vector<int64_t> boundary_elements(const NetworkGraph& graph);

/// Checks every graph invariant (shape chaining, batch-norm positivity,
/// range conventions, weight counts). Errors name the offending layer.
void validate(const NetworkGraph& graph);

/// Loads and validates a model manifest (JSON plus optional float32 blobs).
NetworkGraph load_graph(const std::filesystem::path& manifest_path);

/// Writes a manifest next to a binary weight blob. Weight tensors go to the
/// blob; small per-channel vectors are stored inline. Reloading yields a
/// bit-identical graph.
void save_graph(const NetworkGraph& graph, const std::filesystem::path& manifest_path);

}  // namespace icnq

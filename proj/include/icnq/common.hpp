#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace icnq {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed manifest, blob reference, or JSON input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Structurally well-formed input that violates a model invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// The bit allocator cannot satisfy the memory budgets.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Activation tensor shape, channel-last. Batch is always 1.
struct TensorShape {
    int64_t n = 1;
    int64_t h = 1;
    int64_t w = 1;
    int64_t c = 1;

    int64_t elements() const { return n * h * w * c; }
    bool operator==(const TensorShape&) const = default;
};

enum class LayerKind {
    Conv2d,
    DepthwiseConv2d,
    PointwiseConv2d,
    FullyConnected,
    AvgPool,
};

const char* to_string(LayerKind kind);
LayerKind layer_kind_from_string(std::string_view s);

/// Quantized deployment flavor. Thresholds is modeled for memory accounting
/// only; it is not an executable conversion.
enum class Mode {
    PlFb,          // per-layer weights, batch-norm folded before quantization
    PlIcn,         // per-layer weights, integer channel-normalization
    PcIcn,         // per-channel weights, integer channel-normalization
    PcThresholds,  // per-channel weights, threshold banks (memory model only)
};

const char* to_string(Mode mode);
Mode mode_from_string(std::string_view s);

/// Per-tensor bit assignment. q_act[i] is the input precision of layer i,
/// q_act[i+1] its output precision; the shared boundary makes
/// Q_y of layer i and Q_x of layer i+1 the same value by construction.
struct BitPlan {
    std::vector<int> q_w;    // length L; 8 for layers without weights
    std::vector<int> q_act;  // length L+1; q_act[0] is pinned to 8

    bool operator==(const BitPlan&) const = default;
};

inline bool valid_bits(int q) { return q == 2 || q == 4 || q == 8; }

/// Dense float activation tensor, channel-last.
struct Tensor {
    TensorShape shape;
    std::vector<float> data;
};

}  // namespace icnq

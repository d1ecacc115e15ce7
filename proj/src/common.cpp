#include "icnq/common.hpp"

namespace icnq {

const char* to_string(LayerKind kind) {
    switch (kind) {
        case LayerKind::Conv2d: return "conv2d";
        case LayerKind::DepthwiseConv2d: return "depthwise_conv2d";
        case LayerKind::PointwiseConv2d: return "pointwise_conv2d";
        case LayerKind::FullyConnected: return "fully_connected";
        case LayerKind::AvgPool: return "avg_pool";
    }
    return "unknown";
}

LayerKind layer_kind_from_string(std::string_view s) {
    if (s == "conv2d") return LayerKind::Conv2d;
    if (s == "depthwise_conv2d") return LayerKind::DepthwiseConv2d;
    if (s == "pointwise_conv2d") return LayerKind::PointwiseConv2d;
    if (s == "fully_connected") return LayerKind::FullyConnected;
    if (s == "avg_pool") return LayerKind::AvgPool;
    throw ParseError("unknown layer kind: " + std::string(s));
}

const char* to_string(Mode mode) {
    switch (mode) {
        case Mode::PlFb: return "pl-fb";
        case Mode::PlIcn: return "pl-icn";
        case Mode::PcIcn: return "pc-icn";
        case Mode::PcThresholds: return "pc-thresholds";
    }
    return "unknown";
}

Mode mode_from_string(std::string_view s) {
    if (s == "pl-fb") return Mode::PlFb;
    if (s == "pl-icn") return Mode::PlIcn;
    if (s == "pc-icn") return Mode::PcIcn;
    if (s == "pc-thresholds") return Mode::PcThresholds;
    throw ParseError("unknown mode: " + std::string(s) +
                     " (expected pl-fb, pl-icn, pc-icn, or pc-thresholds)");
}

}  // namespace icnq

#pragma once

#include <cstdint>

#include "icnq/graph.hpp"

namespace icnq {

/// Builds a MobilenetV1 classification chain: a strided 3x3 stem, thirteen
/// depthwise-separable blocks, global average pooling, and a 1000-class
/// fully-connected head. resolution picks the square input size
/// (128/160/192/224); width_multiplier scales every channel count
/// (0.25/0.5/0.75/1.0). Weights and batch-norm parameters are seeded
/// pseudo-random; calibration ranges default to [0, 6].
NetworkGraph mobilenet_v1(int resolution, double width_multiplier, uint64_t seed = 1,
                          int num_classes = 1000);

}  // namespace icnq

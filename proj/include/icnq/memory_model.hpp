#pragma once

#include <cstdint>
#include <vector>

#include "icnq/common.hpp"
#include "icnq/graph.hpp"

namespace icnq {

/// Device memory budgets in bytes: read-only (flash) and read-write (RAM).
struct MemoryBudget {
    int64_t m_ro = 0;
    int64_t m_rw = 0;
};

struct LayerFootprint {
    int64_t weight_bytes = 0;
    int64_t aux_bytes = 0;       // static per-layer deployment parameters
    int64_t in_act_bytes = 0;
    int64_t out_act_bytes = 0;
};

/// Storage width of one integer threshold. The threshold bank of a layer
/// holds c_out * 2^Q_y entries; 16-bit entries reproduce the published
/// footprint of the thresholds method within tolerance.
inline constexpr int64_t kThresholdBytes = 2;

/// ceil(elements * bits / 8).
int64_t mem_bytes(int64_t elements, int bits);

/// Static parameter bytes of one layer. Datatypes: z_x, z_y and per-layer
/// z_w are 1 byte; per-channel z_w is 2 bytes; bq and m0 are 4 bytes; n0 is
/// 1 byte; thresholds are kThresholdBytes each.
///
/// The final fully-connected classifier is charged as bias plus one scalar
/// multiplier in every mode (it has no batch-norm and no activation
/// quantizer). avg_pool layers carry no parameters.
int64_t aux_bytes(const LayerSpec& layer, Mode mode, int q_out, bool is_classifier);

/// Left-hand side of the read-only constraint:
/// sum over layers of mem(w_i, Q_w^i) + aux_i.
int64_t ro_footprint(const NetworkGraph& graph, const BitPlan& plan, Mode mode);

/// Left-hand side of the read-write constraint per layer:
/// mem(x_i, Q_x^i) + mem(y_i, Q_y^i).
std::vector<int64_t> rw_footprint_per_layer(const NetworkGraph& graph, const BitPlan& plan);

/// Bytes of all stored float32 parameters (weights, explicit biases,
/// batch-norm vectors); the uncompressed baseline.
int64_t full_precision_bytes(const NetworkGraph& graph);

/// Per-layer breakdown for reports.
std::vector<LayerFootprint> footprint_table(const NetworkGraph& graph, const BitPlan& plan,
                                            Mode mode);

}  // namespace icnq

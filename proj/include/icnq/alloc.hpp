#pragma once

#include <cstdint>
#include <vector>

#include "icnq/common.hpp"
#include "icnq/graph.hpp"
#include "icnq/memory_model.hpp"

namespace icnq {

struct AllocConfig {
    int q_a_min = 4;      // activation floor
    int q_w_min = 2;      // weight floor
    double delta = 0.05;  // score margin of the weight-cut rule
};

/// Decision rule of the activation pass: returns true when the second
/// tensor's precision should be cut one step, i.e. it is above the floor and
/// either holds more bits than the first tensor or holds equal bits with a
/// strictly larger footprint. A tie in both bits and bytes is not a cut.
bool cut_bits_predicate(int64_t x1_count, int q_x1, int64_t x2_count, int q_x2, int q_a_min);

/// Iterative activation-precision reduction: alternating forward passes
/// (cutting layer outputs) and backward passes (cutting layer inputs) until
/// every layer fits mem(x_i) + mem(y_i) <= m_rw. The network input stays at
/// 8 bits; boundaries joined by avg_pool layers move together.
/// Throws InfeasibleError when a full sweep makes no progress while some
/// layer still violates the constraint.
std::vector<int> cut_activation_bits(const NetworkGraph& graph, int64_t m_rw,
                                     const AllocConfig& config);

/// Iterative weight-precision reduction: while the read-only footprint
/// exceeds m_ro, score every cuttable layer by its share of total weight
/// bytes, and cut the lowest-indexed layer whose score is within delta of
/// the maximum. Activation bits must already be fixed (the thresholds-mode
/// aux term depends on them).
std::vector<int> cut_weight_bits(const NetworkGraph& graph, int64_t m_ro, Mode mode,
                                 const AllocConfig& config, const std::vector<int>& q_act);

/// Full allocation: every tensor starts at 8 bits, activations are cut
/// first, then weights. The returned plan satisfies both memory constraints;
/// infeasibility is reported with a per-layer violation summary instead of
/// ever returning a violating plan.
BitPlan allocate(const NetworkGraph& graph, const MemoryBudget& budget, Mode mode,
                 const AllocConfig& config = {});

}  // namespace icnq

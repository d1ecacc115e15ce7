#pragma once

#include <cstdint>
#include <vector>

#include "icnq/common.hpp"
#include "icnq/graph.hpp"

namespace icnq {

/// Outcome of comparing the integer executor against the fake-quantized
/// float oracle on seeded random inputs.
struct VerifyReport {
    uint64_t seed = 0;
    int n_inputs = 0;
    int64_t max_code_deviation = 0;          // across all boundaries and inputs
    std::vector<int64_t> per_layer_max_dev;  // length L
    int argmax_matches = 0;
    int margin_inputs = 0;                   // inputs whose float top-1 margin exceeds 2 codes
    int margin_matches = 0;

    double argmax_agreement() const {
        return n_inputs == 0 ? 1.0 : static_cast<double>(argmax_matches) / n_inputs;
    }
    double margin_agreement() const {
        return margin_inputs == 0 ? 1.0 : static_cast<double>(margin_matches) / margin_inputs;
    }
};

/// Converts the graph, runs both pipelines on n random inputs drawn from the
/// input range, and aggregates per-boundary code deviations plus argmax
/// agreement on the final boundary.
VerifyReport verify_equivalence(const NetworkGraph& graph, const BitPlan& plan, Mode mode,
                                int n_inputs, uint64_t seed);

}  // namespace icnq

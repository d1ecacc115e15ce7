#include "icnq/quant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace icnq {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError(msg);
}

// Tie rule: half away from zero. This changes codes on exact ties, so it is
// fixed here once for every rounding site.
int64_t round_away(double v) { return std::llround(v); }

// floor() that treats a quotient within float rounding noise of an integer
// as that integer, so re-quantizing a dequantized level is the identity.
int64_t robust_floor(double q) {
    const double n = std::nearbyint(q);
    const double tol = std::max(1.0, std::fabs(q)) * 0x1p-20;
    if (std::fabs(q - n) <= tol) return static_cast<int64_t>(n);
    return static_cast<int64_t>(std::floor(q));
}

struct GroupParams {
    double scale;
    int32_t zero;
    double a, b;
};

GroupParams group_from_range(double lo, double hi, int bits, bool symmetric) {
    if (symmetric) {
        const double m = std::max(std::fabs(lo), std::fabs(hi));
        lo = -m;
        hi = m;
    }
    const int max_code = (1 << bits) - 1;
    GroupParams g{};
    g.a = lo;
    g.b = hi;
    if (lo == hi) {
        // Constant group: scale 1, everything maps to one code.
        g.scale = 1.0;
        g.zero = static_cast<int32_t>(std::clamp<int64_t>(round_away(-lo), 0, max_code));
        return g;
    }
    g.scale = (hi - lo) / max_code;
    g.zero = static_cast<int32_t>(std::clamp<int64_t>(round_away(-lo / g.scale), 0, max_code));
    return g;
}

// Shared floor-quantizer core. The range endpoint is handled explicitly:
// in exact arithmetic floor(b / S) is the top code, and the comparison
// keeps float division noise from dropping it by one.
int64_t floor_code(double x, double scale, int32_t zero, double a, double b, int max_code) {
    const double xc = std::clamp(x, a, b);
    if (xc >= b && b > a) return max_code;
    const int64_t code = zero + robust_floor(xc / scale);
    return std::clamp<int64_t>(code, 0, max_code);
}

}  // namespace

QuantSpec derive_weight_spec(std::span<const float> weights, int bits, QuantScheme scheme,
                             int64_t c_out) {
    require(valid_bits(bits), "bit width must be 2, 4, or 8");
    require(!weights.empty(), "cannot derive a quantization spec from an empty tensor");
    for (float v : weights) {
        require(std::isfinite(v), "non-finite weight value");
    }

    const bool per_channel = scheme.granularity == Granularity::PerChannel;
    int64_t groups = 1;
    int64_t slice = std::ssize(weights);
    if (per_channel) {
        require(c_out >= 1 && std::ssize(weights) % c_out == 0,
                "per-channel spec requires an output-channel-major tensor");
        groups = c_out;
        slice = std::ssize(weights) / c_out;
    }

    QuantSpec spec;
    spec.bits = bits;
    spec.scheme = scheme;
    spec.scale.reserve(static_cast<size_t>(groups));
    spec.zero_point.reserve(static_cast<size_t>(groups));
    spec.range.reserve(static_cast<size_t>(groups));
    for (int64_t g = 0; g < groups; ++g) {
        const auto* first = weights.data() + g * slice;
        const auto [lo, hi] = std::minmax_element(first, first + slice);
        const GroupParams p = group_from_range(*lo, *hi, bits, scheme.symmetric);
        spec.scale.push_back(p.scale);
        spec.zero_point.push_back(p.zero);
        spec.range.emplace_back(p.a, p.b);
    }
    return spec;
}

QuantSpec activation_spec(double b, int bits) {
    require(valid_bits(bits), "bit width must be 2, 4, or 8");
    require(std::isfinite(b) && b >= 0.0, "activation range must satisfy 0 <= b");
    QuantSpec spec;
    spec.bits = bits;
    spec.scheme = {Granularity::PerLayer, false};
    const GroupParams p = group_from_range(0.0, b, bits, false);
    spec.scale = {p.scale};
    spec.zero_point = {p.zero};
    spec.range = {{0.0, b}};
    return spec;
}

QuantSpec input_spec(double a, double b, int bits) {
    require(valid_bits(bits), "bit width must be 2, 4, or 8");
    require(std::isfinite(a) && std::isfinite(b) && a <= b, "input range must satisfy a <= b");
    QuantSpec spec;
    spec.bits = bits;
    spec.scheme = {Granularity::PerLayer, false};
    const GroupParams p = group_from_range(a, b, bits, false);
    spec.scale = {p.scale};
    spec.zero_point = {p.zero};
    spec.range = {{a, b}};
    return spec;
}

std::vector<uint8_t> quantize_weights(std::span<const float> weights, const QuantSpec& spec) {
    const int64_t groups = static_cast<int64_t>(spec.groups());
    require(groups >= 1 && std::ssize(weights) % groups == 0,
            "weight tensor does not match the spec's channel groups");
    const int64_t slice = std::ssize(weights) / groups;
    const int max_code = spec.max_code();

    std::vector<uint8_t> codes(weights.size());
    for (int64_t i = 0; i < std::ssize(weights); ++i) {
        const size_t g = static_cast<size_t>(i / slice);
        const auto [a, b] = spec.range[g];
        const double t = std::clamp(static_cast<double>(weights[static_cast<size_t>(i)]), a, b);
        const int64_t code =
            std::clamp<int64_t>(round_away(t / spec.scale[g]) + spec.zero_point[g], 0, max_code);
        codes[static_cast<size_t>(i)] = static_cast<uint8_t>(code);
    }
    return codes;
}

int quant_act(double x, const QuantSpec& spec) {
    require(spec.groups() == 1, "activation quantizer is per-layer");
    require(spec.range[0].first == 0.0, "activation quantizer requires a == 0");
    return static_cast<int>(floor_code(x, spec.scale[0], spec.zero_point[0], 0.0,
                                       spec.range[0].second, spec.max_code()));
}

int quantize_input_value(double x, const QuantSpec& spec) {
    require(spec.groups() == 1, "input quantizer is per-layer");
    const auto [a, b] = spec.range[0];
    return static_cast<int>(floor_code(x, spec.scale[0], spec.zero_point[0], a, b, spec.max_code()));
}

std::vector<float> fake_quantize(std::span<const float> t, const QuantSpec& spec,
                                 FakeQuantMode mode) {
    const int64_t groups = static_cast<int64_t>(spec.groups());
    require(groups >= 1 && std::ssize(t) % groups == 0,
            "tensor does not match the spec's channel groups");
    const int64_t slice = std::ssize(t) / groups;
    const int max_code = spec.max_code();

    std::vector<float> out(t.size());
    for (int64_t i = 0; i < std::ssize(t); ++i) {
        const size_t g = static_cast<size_t>(i / slice);
        const auto [a, b] = spec.range[g];
        const double x = static_cast<double>(t[static_cast<size_t>(i)]);
        int64_t code;
        if (mode == FakeQuantMode::Weights) {
            const double xc = std::clamp(x, a, b);
            code = std::clamp<int64_t>(round_away(xc / spec.scale[g]) + spec.zero_point[g], 0,
                                       max_code);
        } else {
            code = floor_code(x, spec.scale[g], spec.zero_point[g], a, b, max_code);
        }
        out[static_cast<size_t>(i)] = static_cast<float>(spec.dequantize(code, g));
    }
    return out;
}

}  // namespace icnq

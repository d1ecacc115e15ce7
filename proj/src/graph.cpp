#include "icnq/graph.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <json.hpp>

namespace icnq {

using nlohmann::json;

namespace {

std::string layer_tag(int index) { return "layer " + std::to_string(index); }

void check(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError(msg);
}

TensorShape conv_output_shape(const TensorShape& in, const LayerSpec& l) {
    const int64_t oh = (in.h + 2 * l.pad_h - l.kernel_h) / l.stride_h + 1;
    const int64_t ow = (in.w + 2 * l.pad_w - l.kernel_w) / l.stride_w + 1;
    if (in.h + 2 * l.pad_h - l.kernel_h < 0 || in.w + 2 * l.pad_w - l.kernel_w < 0 || oh < 1 ||
        ow < 1) {
        throw ValidationError(layer_tag(l.index) + ": output shape collapses to zero (input " +
                              std::to_string(in.h) + "x" + std::to_string(in.w) + ", kernel " +
                              std::to_string(l.kernel_h) + "x" + std::to_string(l.kernel_w) + ")");
    }
    return {1, oh, ow, l.out_channels};
}

}  // namespace

std::vector<ShapePair> infer_shapes(const NetworkGraph& graph) {
    std::vector<ShapePair> shapes;
    shapes.reserve(graph.layers.size());
    TensorShape cur = graph.input_shape;
    for (const LayerSpec& l : graph.layers) {
        ShapePair p;
        p.in = cur;
        switch (l.kind) {
            case LayerKind::AvgPool:
                p.out = {1, 1, 1, cur.c};
                break;
            case LayerKind::FullyConnected:
                check(l.kernel_h == cur.h && l.kernel_w == cur.w && l.pad_h == 0 && l.pad_w == 0,
                      layer_tag(l.index) + ": fully-connected kernel must cover the input (" +
                          std::to_string(cur.h) + "x" + std::to_string(cur.w) + ")");
                p.out = {1, 1, 1, l.out_channels};
                break;
            default:
                p.out = conv_output_shape(cur, l);
        }
        shapes.push_back(p);
        cur = p.out;
    }
    return shapes;
}

std::vector<int64_t> boundary_elements(const NetworkGraph& graph) {
    std::vector<int64_t> counts;
    counts.reserve(graph.layers.size() + 1);
    counts.push_back(graph.input_shape.elements());
    for (const ShapePair& p : infer_shapes(graph)) {
        counts.push_back(p.out.elements());
    }
    return counts;
}

void validate(const NetworkGraph& graph) {
    check(!graph.layers.empty(), "graph must contain at least one layer");
    check(graph.input_shape.n == 1, "batch dimension must be 1");
    check(graph.input_shape.h >= 1 && graph.input_shape.w >= 1 && graph.input_shape.c >= 1,
          "input dimensions must be positive");
    check(std::isfinite(graph.input_a) && std::isfinite(graph.input_b) &&
              graph.input_a <= graph.input_b,
          "input range must satisfy a <= b");

    TensorShape cur = graph.input_shape;
    for (size_t i = 0; i < graph.layers.size(); ++i) {
        const LayerSpec& l = graph.layers[i];
        const std::string tag = layer_tag(static_cast<int>(i));
        check(l.index == static_cast<int>(i), tag + ": index out of order");
        check(l.out_channels >= 1 && l.in_channels >= 1, tag + ": channel counts must be positive");
        check(l.in_channels == cur.c, tag + ": expects " + std::to_string(l.in_channels) +
                                          " input channels but the chain provides " +
                                          std::to_string(cur.c));
        check(l.kernel_h >= 1 && l.kernel_w >= 1 && l.stride_h >= 1 && l.stride_w >= 1 &&
                  l.pad_h >= 0 && l.pad_w >= 0,
              tag + ": invalid kernel/stride/padding");
        check(std::isfinite(l.act_a) && std::isfinite(l.act_b) && l.act_a == 0.0 &&
                  l.act_b >= 0.0,
              tag + ": activation range must satisfy a = 0 <= b");

        if (l.kind == LayerKind::DepthwiseConv2d) {
            check(l.in_channels == l.out_channels,
                  tag + ": depthwise layers require in_channels == out_channels");
        }
        if (l.kind == LayerKind::PointwiseConv2d) {
            check(l.kernel_h == 1 && l.kernel_w == 1, tag + ": pointwise kernel must be 1x1");
        }
        if (l.kind == LayerKind::AvgPool) {
            check(l.weights.empty() && l.bias.empty() && !l.bn.has_value(),
                  tag + ": avg_pool carries no weights, bias, or batch-norm");
            check(l.in_channels == l.out_channels, tag + ": avg_pool preserves channels");
        } else {
            check(std::ssize(l.weights) == l.weight_count(),
                  tag + ": weight tensor holds " + std::to_string(l.weights.size()) +
                      " elements, expected " + std::to_string(l.weight_count()));
            for (float v : l.weights) {
                check(std::isfinite(v), tag + ": non-finite weight value");
            }
            check(l.bias.empty() || std::ssize(l.bias) == l.out_channels,
                  tag + ": bias length must equal out_channels");
            for (float v : l.bias) {
                check(std::isfinite(v), tag + ": non-finite bias value");
            }
        }
        if (l.bn.has_value()) {
            const BatchNormParams& bn = *l.bn;
            const auto len = static_cast<size_t>(l.out_channels);
            check(bn.gamma.size() == len && bn.beta.size() == len && bn.mu.size() == len &&
                      bn.sigma.size() == len,
                  tag + ": batch-norm vectors must have length out_channels");
            for (size_t c = 0; c < len; ++c) {
                check(std::isfinite(bn.gamma[c]) && std::isfinite(bn.beta[c]) &&
                          std::isfinite(bn.mu[c]) && std::isfinite(bn.sigma[c]),
                      tag + ": non-finite batch-norm parameter at channel " + std::to_string(c));
                check(bn.sigma[c] > 0.0f,
                      tag + ": sigma must be positive, got " + std::to_string(bn.sigma[c]) +
                          " at channel " + std::to_string(c));
                check(bn.gamma[c] != 0.0f, tag + ": gamma is zero at channel " + std::to_string(c));
            }
        }
        cur = infer_shapes(graph)[i].out;  // revalidated below; cheap chains only
    }

    // Shape chaining end to end (also catches collapsed spatial dims).
    const auto shapes = infer_shapes(graph);
    for (size_t i = 0; i + 1 < shapes.size(); ++i) {
        check(shapes[i].out == shapes[i + 1].in, layer_tag(static_cast<int>(i)) +
                                                     ": output shape does not chain into layer " +
                                                     std::to_string(i + 1));
    }
}

namespace {

class BlobCache {
public:
    explicit BlobCache(std::filesystem::path base) : base_(std::move(base)) {}

    std::vector<float> read(const std::string& name, int64_t offset_bytes, int64_t count) {
        const auto& bytes = load(name);
        const int64_t need = offset_bytes + count * 4;
        if (offset_bytes < 0 || count < 0 || need > std::ssize(bytes)) {
            throw ParseError("blob reference out of range: " + name + " offset " +
                             std::to_string(offset_bytes) + " count " + std::to_string(count));
        }
        std::vector<float> out(static_cast<size_t>(count));
        std::memcpy(out.data(), bytes.data() + offset_bytes, static_cast<size_t>(count) * 4);
        return out;
    }

private:
    const std::vector<char>& load(const std::string& name) {
        auto it = cache_.find(name);
        if (it != cache_.end()) return it->second;
        std::ifstream f(base_ / name, std::ios::binary);
        if (!f) throw ParseError("cannot open blob file: " + (base_ / name).string());
        std::vector<char> bytes((std::istreambuf_iterator<char>(f)),
                                std::istreambuf_iterator<char>());
        return cache_.emplace(name, std::move(bytes)).first->second;
    }

    std::filesystem::path base_;
    std::map<std::string, std::vector<char>> cache_;
};

std::vector<float> read_param(const json& node, BlobCache& blobs, const std::string& what) {
    if (node.is_array()) {
        std::vector<float> out;
        out.reserve(node.size());
        for (const auto& v : node) {
            if (!v.is_number()) throw ParseError(what + ": expected numeric array");
            out.push_back(v.get<float>());
        }
        return out;
    }
    if (node.is_object()) {
        return blobs.read(node.at("blob").get<std::string>(),
                          node.value("offset", int64_t{0}), node.at("count").get<int64_t>());
    }
    throw ParseError(what + ": expected an inline array or a {blob, offset, count} reference");
}

std::pair<int, int> read_pair(const json& node, const std::string& what) {
    if (!node.is_array() || node.size() != 2) throw ParseError(what + ": expected [a, b]");
    return {node[0].get<int>(), node[1].get<int>()};
}

}  // namespace

NetworkGraph load_graph(const std::filesystem::path& manifest_path) {
    std::ifstream f(manifest_path);
    if (!f) throw ParseError("cannot open manifest: " + manifest_path.string());

    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::exception& e) {
        throw ParseError("malformed manifest " + manifest_path.string() + ": " + e.what());
    }

    NetworkGraph graph;
    BlobCache blobs(manifest_path.parent_path());
    try {
        const json& input = doc.at("input");
        const json& shape = input.at("shape");
        if (!shape.is_array() || shape.size() != 4) {
            throw ParseError("input.shape must be [n, h, w, c]");
        }
        graph.input_shape = {shape[0].get<int64_t>(), shape[1].get<int64_t>(),
                             shape[2].get<int64_t>(), shape[3].get<int64_t>()};
        const json& range = input.at("range");
        graph.input_a = range.at(0).get<double>();
        graph.input_b = range.at(1).get<double>();

        int index = 0;
        for (const json& jl : doc.at("layers")) {
            LayerSpec l;
            l.index = index++;
            l.kind = layer_kind_from_string(jl.at("kind").get<std::string>());
            if (jl.contains("kernel")) {
                std::tie(l.kernel_h, l.kernel_w) = read_pair(jl.at("kernel"), "kernel");
            }
            if (jl.contains("stride")) {
                std::tie(l.stride_h, l.stride_w) = read_pair(jl.at("stride"), "stride");
            }
            if (jl.contains("padding")) {
                std::tie(l.pad_h, l.pad_w) = read_pair(jl.at("padding"), "padding");
            }
            l.in_channels = jl.at("in_channels").get<int>();
            l.out_channels = jl.at("out_channels").get<int>();
            if (jl.contains("act_range")) {
                l.act_a = jl.at("act_range").at(0).get<double>();
                l.act_b = jl.at("act_range").at(1).get<double>();
            }
            const std::string tag = layer_tag(l.index);
            if (l.kind != LayerKind::AvgPool) {
                l.weights = read_param(jl.at("weights"), blobs, tag + " weights");
            }
            if (jl.contains("bias")) {
                l.bias = read_param(jl.at("bias"), blobs, tag + " bias");
            }
            if (jl.contains("bn")) {
                const json& jbn = jl.at("bn");
                BatchNormParams bn;
                bn.gamma = read_param(jbn.at("gamma"), blobs, tag + " bn.gamma");
                bn.beta = read_param(jbn.at("beta"), blobs, tag + " bn.beta");
                bn.mu = read_param(jbn.at("mean"), blobs, tag + " bn.mean");
                bn.sigma = read_param(jbn.at("std"), blobs, tag + " bn.std");
                l.bn = std::move(bn);
            }
            graph.layers.push_back(std::move(l));
        }
    } catch (const json::exception& e) {
        throw ParseError("manifest " + manifest_path.string() + ": " + e.what());
    }

    validate(graph);
    return graph;
}

namespace {

json param_to_json(const std::vector<float>& v) {
    json arr = json::array();
    for (float x : v) arr.push_back(static_cast<double>(x));  // exact widening
    return arr;
}

}  // namespace

void save_graph(const NetworkGraph& graph, const std::filesystem::path& manifest_path) {
    validate(graph);
    const std::string blob_name = manifest_path.stem().string() + ".bin";
    std::ofstream blob(manifest_path.parent_path() / blob_name, std::ios::binary);
    if (!blob) {
        throw ParseError("cannot write blob: " + (manifest_path.parent_path() / blob_name).string());
    }

    json doc;
    doc["schema_version"] = 1;
    doc["input"] = {
        {"shape", {graph.input_shape.n, graph.input_shape.h, graph.input_shape.w,
                   graph.input_shape.c}},
        {"range", {graph.input_a, graph.input_b}},
    };

    int64_t offset = 0;
    json layers = json::array();
    for (const LayerSpec& l : graph.layers) {
        json jl;
        jl["kind"] = to_string(l.kind);
        jl["kernel"] = {l.kernel_h, l.kernel_w};
        jl["stride"] = {l.stride_h, l.stride_w};
        jl["padding"] = {l.pad_h, l.pad_w};
        jl["in_channels"] = l.in_channels;
        jl["out_channels"] = l.out_channels;
        jl["act_range"] = {l.act_a, l.act_b};
        if (!l.weights.empty()) {
            blob.write(reinterpret_cast<const char*>(l.weights.data()),
                       std::ssize(l.weights) * 4);
            jl["weights"] = {{"blob", blob_name}, {"offset", offset},
                             {"count", std::ssize(l.weights)}};
            offset += std::ssize(l.weights) * 4;
        }
        if (!l.bias.empty()) jl["bias"] = param_to_json(l.bias);
        if (l.bn.has_value()) {
            jl["bn"] = {{"gamma", param_to_json(l.bn->gamma)},
                        {"beta", param_to_json(l.bn->beta)},
                        {"mean", param_to_json(l.bn->mu)},
                        {"std", param_to_json(l.bn->sigma)}};
        }
        layers.push_back(std::move(jl));
    }
    doc["layers"] = std::move(layers);

    std::ofstream out(manifest_path);
    if (!out) throw ParseError("cannot write manifest: " + manifest_path.string());
    out << doc.dump(2) << "\n";
}

}  // namespace icnq

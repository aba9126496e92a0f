#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "culab/errors.hpp"
#include "culab/nn/params.hpp"
#include "culab/rng.hpp"

namespace culab {

// Sinusoidal timestep encoding: first half sin(t / w_k), second half
// cos(t / w_k) with w_k geometrically spaced from 1 to 10^4.
inline std::vector<double> time_embed(int t, int dim) {
    if (dim <= 0 || dim % 2 != 0) throw UsageError("time_embed: dim must be even and positive");
    if (t < 0) throw UsageError("time_embed: negative timestep");
    const int half = dim / 2;
    std::vector<double> out(static_cast<std::size_t>(dim));
    for (int k = 0; k < half; ++k) {
        const double expo = (half == 1) ? 0.0 : static_cast<double>(k) / (half - 1);
        const double scale = std::pow(10000.0, expo);
        out[static_cast<std::size_t>(k)] = std::sin(t / scale);
        out[static_cast<std::size_t>(half + k)] = std::cos(t / scale);
    }
    return out;
}

// Architecture descriptor for the conditional denoiser MLP:
//   input  = z (data_dim) ++ time_embed(t, time_dim) ++ cond (cond_dim)
//   body   = fully connected hidden layers, tanh
//   output = data_dim, linear
// Immutable after construction; all nets with equal descriptors share the
// same flat parameter layout.
struct NetArch {
    int data_dim = 2;
    int time_dim = 16;
    int cond_dim = 17;
    std::vector<int> hidden = {64, 64};

    int input_dim() const { return data_dim + time_dim + cond_dim; }

    // (out, in) per affine layer, input to output order
    std::vector<std::pair<int, int>> layer_shapes() const {
        std::vector<std::pair<int, int>> shapes;
        int in = input_dim();
        for (int h : hidden) {
            shapes.emplace_back(h, in);
            in = h;
        }
        shapes.emplace_back(data_dim, in);
        return shapes;
    }

    std::size_t param_count() const {
        std::size_t n = 0;
        for (auto [out, in] : layer_shapes())
            n += static_cast<std::size_t>(out) * static_cast<std::size_t>(in) +
                 static_cast<std::size_t>(out);
        return n;
    }

    bool operator==(const NetArch&) const = default;
};

// Offset map from layer index to slices of the flat parameter vector.
// Layer l occupies [w_off, w_off + out*in) for the row-major weight matrix
// followed by [b_off, b_off + out) for the bias.
struct ParamLayout {
    struct Slice {
        std::size_t w_off;
        std::size_t b_off;
        int out;
        int in;
    };
    std::vector<Slice> layers;
    std::size_t total = 0;

    explicit ParamLayout(const NetArch& arch) {
        std::size_t off = 0;
        for (auto [out, in] : arch.layer_shapes()) {
            Slice s;
            s.w_off = off;
            off += static_cast<std::size_t>(out) * static_cast<std::size_t>(in);
            s.b_off = off;
            off += static_cast<std::size_t>(out);
            s.out = out;
            s.in = in;
            layers.push_back(s);
        }
        total = off;
    }
};

// One training tuple for the denoising MSE objective.
struct DenoiseSample {
    std::vector<double> z;     // noisy data point z_t
    int t = 0;                 // timestep
    std::vector<double> cond;  // condition embedding
    std::vector<double> target;
};

// Conditional denoiser eps(z_t, t, cond) with exact reverse-mode gradients.
// A net is an immutable value: updates produce new nets via with_params.
class DenoiserNet {
public:
    DenoiserNet(NetArch arch, ParamVector params)
        : arch_(std::move(arch)), layout_(arch_), params_(std::move(params)) {
        if (params_.size() != layout_.total)
            throw UsageError("DenoiserNet: parameter count does not match architecture");
    }

    // Gaussian fan-in init, biases zero.
    static DenoiserNet init_random(const NetArch& arch, std::uint64_t seed) {
        ParamLayout layout(arch);
        ParamVector p(layout.total, 0.0);
        Rng rng(seed);
        for (const auto& l : layout.layers) {
            const double scale = 1.0 / std::sqrt(static_cast<double>(l.in));
            for (std::size_t i = 0; i < static_cast<std::size_t>(l.out) * l.in; ++i)
                p[l.w_off + i] = scale * rng.normal();
        }
        return DenoiserNet(arch, std::move(p));
    }

    const NetArch& arch() const { return arch_; }
    const ParamLayout& layout() const { return layout_; }
    const ParamVector& params() const { return params_; }

    DenoiserNet with_params(ParamVector params) const {
        return DenoiserNet(arch_, std::move(params));
    }

    // eps prediction; deterministic in (params, inputs)
    std::vector<double> forward(std::span<const double> z, int t,
                                std::span<const double> cond) const {
        std::vector<double> x = assemble_input(z, t, cond);
        std::vector<double> y;
        for (std::size_t l = 0; l < layout_.layers.size(); ++l) {
            y = affine(l, x);
            if (l + 1 < layout_.layers.size())
                for (double& v : y) v = std::tanh(v);
            x = std::move(y);
        }
        return x;
    }

    // Mean over the batch of ||target - forward(z, t, cond)||^2 and its exact
    // gradient with respect to every parameter.
    std::pair<double, ParamVector> loss_and_grad(std::span<const DenoiseSample> batch) const {
        if (batch.empty()) throw UsageError("loss_and_grad: empty batch");
        const std::size_t n_layers = layout_.layers.size();
        ParamVector grad(layout_.total, 0.0);
        double loss = 0.0;
        const double inv_b = 1.0 / static_cast<double>(batch.size());

        // activations[0] = input, activations[l+1] = output of layer l
        std::vector<std::vector<double>> acts(n_layers + 1);
        for (std::size_t bi = 0; bi < batch.size(); ++bi) {
            const DenoiseSample& s = batch[bi];
            if (static_cast<int>(s.target.size()) != arch_.data_dim)
                throw UsageError("loss_and_grad: target dimension mismatch");
            acts[0] = assemble_input(s.z, s.t, s.cond);
            for (std::size_t l = 0; l < n_layers; ++l) {
                acts[l + 1] = affine(l, acts[l]);
                if (l + 1 < n_layers)
                    for (double& v : acts[l + 1]) v = std::tanh(v);
            }
            const std::vector<double>& y = acts[n_layers];

            std::vector<double> delta(y.size());
            for (std::size_t i = 0; i < y.size(); ++i) {
                const double r = y[i] - s.target[i];
                if (!std::isfinite(r))
                    throw NumericalError("loss_and_grad: non-finite residual at batch index " +
                                         std::to_string(bi));
                loss += r * r * inv_b;
                delta[i] = 2.0 * r * inv_b;
            }

            for (std::size_t l = n_layers; l-- > 0;) {
                const auto& sl = layout_.layers[l];
                const std::vector<double>& a_in = acts[l];
                for (int o = 0; o < sl.out; ++o) {
                    const double d = delta[static_cast<std::size_t>(o)];
                    double* wrow = grad.data() + sl.w_off + static_cast<std::size_t>(o) * sl.in;
                    for (int i = 0; i < sl.in; ++i) wrow[i] += d * a_in[static_cast<std::size_t>(i)];
                    grad[sl.b_off + static_cast<std::size_t>(o)] += d;
                }
                if (l == 0) break;
                std::vector<double> prev(static_cast<std::size_t>(sl.in), 0.0);
                const double* w = params_.data() + sl.w_off;
                for (int o = 0; o < sl.out; ++o) {
                    const double d = delta[static_cast<std::size_t>(o)];
                    const double* wrow = w + static_cast<std::size_t>(o) * sl.in;
                    for (int i = 0; i < sl.in; ++i) prev[static_cast<std::size_t>(i)] += d * wrow[i];
                }
                // tanh'(pre) = 1 - a^2 on the layer's activated output
                for (std::size_t i = 0; i < prev.size(); ++i) {
                    const double a = acts[l][i];
                    prev[i] *= 1.0 - a * a;
                }
                delta = std::move(prev);
            }
        }
        if (!std::isfinite(loss)) throw NumericalError("loss_and_grad: non-finite loss");
        return {loss, std::move(grad)};
    }

private:
    std::vector<double> assemble_input(std::span<const double> z, int t,
                                       std::span<const double> cond) const {
        if (static_cast<int>(z.size()) != arch_.data_dim)
            throw UsageError("DenoiserNet: data dimension mismatch");
        if (static_cast<int>(cond.size()) != arch_.cond_dim)
            throw UsageError("DenoiserNet: condition dimension mismatch");
        std::vector<double> x;
        x.reserve(static_cast<std::size_t>(arch_.input_dim()));
        x.insert(x.end(), z.begin(), z.end());
        const std::vector<double> te = time_embed(t, arch_.time_dim);
        x.insert(x.end(), te.begin(), te.end());
        x.insert(x.end(), cond.begin(), cond.end());
        return x;
    }

    std::vector<double> affine(std::size_t l, const std::vector<double>& in) const {
        const auto& sl = layout_.layers[l];
        std::vector<double> out(static_cast<std::size_t>(sl.out));
        const double* w = params_.data() + sl.w_off;
        const double* b = params_.data() + sl.b_off;
        for (int o = 0; o < sl.out; ++o) {
            const double* wrow = w + static_cast<std::size_t>(o) * sl.in;
            double acc = b[o];
            for (int i = 0; i < sl.in; ++i) acc += wrow[i] * in[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(o)] = acc;
        }
        return out;
    }

    NetArch arch_;
    ParamLayout layout_;
    ParamVector params_;
};

}  // namespace culab

#pragma once

#include <cmath>
#include <utility>

#include "culab/nn/params.hpp"

namespace culab {

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// Bias-corrected Adam. Moments start at zero; the step counter increases by
// exactly one per update.
struct AdamState {
    AdamConfig cfg;
    ParamVector m;
    ParamVector v;
    long step = 0;

    static AdamState init(std::size_t n, AdamConfig cfg) {
        AdamState s;
        s.cfg = cfg;
        s.m.assign(n, 0.0);
        s.v.assign(n, 0.0);
        return s;
    }
};

inline std::pair<ParamVector, AdamState> adam_step(const ParamVector& params,
                                                   const ParamVector& grads,
                                                   const AdamState& state) {
    require_same_length(params, grads, "adam_step");
    require_same_length(params, state.m, "adam_step");
    AdamState next = state;
    next.step = state.step + 1;
    const double b1 = next.cfg.beta1, b2 = next.cfg.beta2;
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(next.step));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(next.step));
    ParamVector out = params;
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double g = grads[i];
        next.m[i] = b1 * next.m[i] + (1.0 - b1) * g;
        next.v[i] = b2 * next.v[i] + (1.0 - b2) * g * g;
        const double mhat = next.m[i] / c1;
        const double vhat = next.v[i] / c2;
        out[i] -= next.cfg.lr * mhat / (std::sqrt(vhat) + next.cfg.eps);
    }
    return {std::move(out), std::move(next)};
}

}  // namespace culab

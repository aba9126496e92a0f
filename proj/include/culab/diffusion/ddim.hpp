#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "culab/diffusion/schedule.hpp"
#include "culab/errors.hpp"
#include "culab/nn/net.hpp"
#include "culab/rng.hpp"

namespace culab {

// z_t = sqrt(ab_t) z0 + sqrt(1 - ab_t) eps. The noise is supplied by the
// caller so that all RNG stays in the callers' derived streams.
inline std::vector<double> forward_diffuse(const std::vector<double>& z0, int t,
                                           const std::vector<double>& eps,
                                           const NoiseSchedule& sched) {
    if (t < 1 || t > sched.T) throw UsageError("forward_diffuse: timestep out of range");
    if (z0.size() != eps.size()) throw UsageError("forward_diffuse: dimension mismatch");
    const double a = sched.sqrt_ab(t);
    const double b = sched.sqrt_one_minus_ab(t);
    std::vector<double> out(z0.size());
    for (std::size_t i = 0; i < z0.size(); ++i) out[i] = a * z0[i] + b * eps[i];
    return out;
}

// Deterministic DDIM update from t to t_prev:
// z_prev = sqrt(ab_prev) * (z_t - sqrt(1-ab_t) eps) / sqrt(ab_t)
//          + sqrt(1-ab_prev) * eps
inline std::vector<double> ddim_step(const std::vector<double>& z_t,
                                     const std::vector<double>& eps_pred, int t, int t_prev,
                                     const NoiseSchedule& sched) {
    if (t_prev >= t) throw UsageError("ddim_step: t_prev must be < t");
    if (t < 1 || t > sched.T || t_prev < 0) throw UsageError("ddim_step: timestep out of range");
    if (z_t.size() != eps_pred.size()) throw UsageError("ddim_step: dimension mismatch");
    const double sa_t = sched.sqrt_ab(t);
    const double sb_t = sched.sqrt_one_minus_ab(t);
    const double sa_p = sched.sqrt_ab(t_prev);
    const double sb_p = sched.sqrt_one_minus_ab(t_prev);
    std::vector<double> out(z_t.size());
    for (std::size_t i = 0; i < z_t.size(); ++i) {
        const double z0_pred = (z_t[i] - sb_t * eps_pred[i]) / sa_t;
        out[i] = sa_p * z0_pred + sb_p * eps_pred[i];
    }
    return out;
}

// Evenly spaced decreasing ladder T = t_0 > t_1 > ... > t_n = 0.
inline std::vector<int> ddim_ladder(int T, int num_steps) {
    if (num_steps < 1 || num_steps > T)
        throw UsageError("ddim_ladder: need 1 <= num_steps <= T");
    std::vector<int> ladder(static_cast<std::size_t>(num_steps) + 1);
    for (int k = 0; k <= num_steps; ++k)
        ladder[static_cast<std::size_t>(k)] =
            static_cast<int>(std::lround(static_cast<double>(T) * (num_steps - k) / num_steps));
    return ladder;
}

// Full DDIM rollout from seeded standard-normal z_T down to a clean sample.
// Bitwise deterministic in (net params, cond, num_steps, seed).
inline std::vector<double> ddim_sample(const DenoiserNet& net, const std::vector<double>& cond,
                                       const NoiseSchedule& sched, int num_steps,
                                       std::uint64_t seed) {
    const std::vector<int> ladder = ddim_ladder(sched.T, num_steps);
    Rng rng(seed);
    std::vector<double> z(static_cast<std::size_t>(net.arch().data_dim));
    for (double& v : z) v = rng.normal();
    for (std::size_t k = 0; k + 1 < ladder.size(); ++k) {
        const int t = ladder[k];
        const int t_prev = ladder[k + 1];
        const std::vector<double> eps = net.forward(z, t, cond);
        z = ddim_step(z, eps, t, t_prev, sched);
    }
    return z;
}

// Uniform integer timestep in [t_lo, t_hi].
inline int sample_training_timestep(int t_lo, int t_hi, Rng& rng) {
    if (t_lo < 1 || t_lo > t_hi) throw UsageError("sample_training_timestep: empty range");
    return rng.uniform_int(t_lo, t_hi);
}

}  // namespace culab

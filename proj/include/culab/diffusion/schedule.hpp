#pragma once

#include <cmath>
#include <vector>

#include "culab/errors.hpp"

namespace culab {

// Variance schedule tables, 1-indexed by timestep. Index 0 is the identity
// sentinel (alpha_bar[0] == 1), so the final DDIM step to t=0 needs no
// special case.
struct NoiseSchedule {
    int T = 0;
    std::vector<double> beta;       // beta[0] unused
    std::vector<double> alpha;      // alpha[t] = 1 - beta[t], alpha[0] = 1
    std::vector<double> alpha_bar;  // alpha_bar[t] = alpha_bar[t-1] * alpha[t]

    double sqrt_ab(int t) const { return std::sqrt(alpha_bar[static_cast<std::size_t>(t)]); }
    double sqrt_one_minus_ab(int t) const {
        return std::sqrt(1.0 - alpha_bar[static_cast<std::size_t>(t)]);
    }
};

// Linear beta schedule from beta_start to beta_end over T steps.
inline NoiseSchedule make_schedule(int T, double beta_start, double beta_end) {
    if (T < 1) throw UsageError("make_schedule: T must be >= 1");
    if (!(beta_start > 0.0 && beta_start <= beta_end && beta_end < 1.0))
        throw UsageError("make_schedule: need 0 < beta_start <= beta_end < 1");
    NoiseSchedule s;
    s.T = T;
    s.beta.assign(static_cast<std::size_t>(T) + 1, 0.0);
    s.alpha.assign(static_cast<std::size_t>(T) + 1, 1.0);
    s.alpha_bar.assign(static_cast<std::size_t>(T) + 1, 1.0);
    for (int t = 1; t <= T; ++t) {
        const double frac = (T == 1) ? 0.0 : static_cast<double>(t - 1) / (T - 1);
        const std::size_t i = static_cast<std::size_t>(t);
        s.beta[i] = beta_start + (beta_end - beta_start) * frac;
        s.alpha[i] = 1.0 - s.beta[i];
        s.alpha_bar[i] = s.alpha_bar[i - 1] * s.alpha[i];
    }
    return s;
}

}  // namespace culab

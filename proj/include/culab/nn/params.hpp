#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "culab/errors.hpp"

namespace culab {

// Flat parameter vector. Every model sharing an architecture descriptor has
// the same length and layout, so distances, regularizers and checkpoints are
// single vector operations.
using ParamVector = std::vector<double>;

inline void require_same_length(const ParamVector& a, const ParamVector& b,
                                const char* where) {
    if (a.size() != b.size())
        throw UsageError(std::string(where) + ": parameter vectors differ in length");
}

// Euclidean norm of a - b.
inline double param_distance(const ParamVector& a, const ParamVector& b) {
    require_same_length(a, b, "param_distance");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

inline bool all_finite(const ParamVector& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace culab

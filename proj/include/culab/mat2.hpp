#pragma once

#include <array>
#include <cmath>

#include "culab/errors.hpp"

namespace culab {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;  // row-major

inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator*(double s, const Vec2& v) { return {s * v[0], s * v[1]}; }
inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
inline double norm(const Vec2& v) { return std::sqrt(dot(v, v)); }

inline Mat2 mat2_identity(double s = 1.0) { return {{{s, 0.0}, {0.0, s}}}; }

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {{{a[0][0] + b[0][0], a[0][1] + b[0][1]}, {a[1][0] + b[1][0], a[1][1] + b[1][1]}}};
}

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {{{a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]},
             {a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]}}};
}

inline Vec2 operator*(const Mat2& m, const Vec2& v) {
    return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

inline double trace(const Mat2& m) { return m[0][0] + m[1][1]; }
inline double det(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

inline bool is_symmetric(const Mat2& m, double tol = 1e-12) {
    return std::abs(m[0][1] - m[1][0]) <= tol * (1.0 + std::abs(m[0][1]));
}

// Lower Cholesky factor of a symmetric positive definite matrix.
inline Mat2 cholesky(const Mat2& m) {
    if (!is_symmetric(m) || m[0][0] <= 0.0) throw UsageError("cholesky: matrix not SPD");
    const double l00 = std::sqrt(m[0][0]);
    const double l10 = m[1][0] / l00;
    const double rest = m[1][1] - l10 * l10;
    if (rest <= 0.0) throw UsageError("cholesky: matrix not SPD");
    return {{{l00, 0.0}, {l10, std::sqrt(rest)}}};
}

inline Mat2 inverse(const Mat2& m) {
    const double d = det(m);
    if (d == 0.0) throw NumericalError("mat2: singular matrix");
    return {{{m[1][1] / d, -m[0][1] / d}, {-m[1][0] / d, m[0][0] / d}}};
}

// log N(x; mean, cov) for an SPD covariance
inline double log_gaussian_pdf(const Vec2& x, const Vec2& mean, const Mat2& cov) {
    const double d = det(cov);
    if (d <= 0.0) throw UsageError("log_gaussian_pdf: covariance not SPD");
    const Vec2 r = x - mean;
    const Mat2 inv = inverse(cov);
    const double quad = r[0] * (inv[0][0] * r[0] + inv[0][1] * r[1]) +
                        r[1] * (inv[1][0] * r[0] + inv[1][1] * r[1]);
    constexpr double kLog2Pi = 1.8378770664093454836;
    return -kLog2Pi - 0.5 * std::log(d) - 0.5 * quad;
}

// Principal square root of a 2x2 matrix with positive real eigenvalues
// (covers SPD matrices and products of two SPD matrices). Closed form:
// sqrt(M) = (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M)).
inline Mat2 sqrtm(const Mat2& m) {
    double d = det(m);
    if (d < 0.0) {
        if (d < -1e-12) throw NumericalError("sqrtm: negative determinant");
        d = 0.0;
    }
    const double s = std::sqrt(d);
    const double denom2 = trace(m) + 2.0 * s;
    if (denom2 <= 0.0) throw NumericalError("sqrtm: eigenvalues not positive");
    const double denom = std::sqrt(denom2);
    return {{{(m[0][0] + s) / denom, m[0][1] / denom},
             {m[1][0] / denom, (m[1][1] + s) / denom}}};
}

// Eigen-decomposition of a symmetric 2x2: returns {l1, l2, c, s} with
// l1 >= l2 and rotation [c -s; s c] whose columns are the eigenvectors.
struct SymEig2 {
    double l1, l2;
    double c, s;
};

inline SymEig2 eig_sym(const Mat2& m) {
    if (!is_symmetric(m, 1e-9)) throw UsageError("eig_sym: matrix not symmetric");
    const double a = m[0][0], b = m[0][1], d = m[1][1];
    const double tr = a + d;
    const double gap = std::sqrt(std::max(0.0, (a - d) * (a - d) + 4.0 * b * b));
    const double l1 = 0.5 * (tr + gap);
    const double l2 = 0.5 * (tr - gap);
    double c, s;
    if (std::abs(b) < 1e-300) {
        if (a >= d) {
            c = 1.0;
            s = 0.0;
        } else {
            c = 0.0;
            s = 1.0;
        }
    } else {
        // eigenvector for l1: (b, l1 - a)
        const double nx = b, ny = l1 - a;
        const double n = std::sqrt(nx * nx + ny * ny);
        c = nx / n;
        s = ny / n;
    }
    return {l1, l2, c, s};
}

}  // namespace culab

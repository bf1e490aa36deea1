#pragma once

#include <array>
#include <cmath>

namespace rksat {

struct Vec3 {
    std::array<double, 3> v{0.0, 0.0, 0.0};
    double& operator[](int i) { return v[(size_t)i]; }
    const double& operator[](int i) const { return v[(size_t)i]; }
};

struct Mat3 {
    std::array<std::array<double, 3>, 3> m{};
    double& operator()(int i, int j) { return m[(size_t)i][(size_t)j]; }
    const double& operator()(int i, int j) const { return m[(size_t)i][(size_t)j]; }
};

inline double det3(const Mat3& a) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

// solve a*x = b by Gaussian elimination with partial pivoting
inline Vec3 solve3(Mat3 a, Vec3 b) {
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::fabs(a(r, c)) > std::fabs(a(piv, c))) piv = r;
        if (piv != c) {
            std::swap(a.m[(size_t)piv], a.m[(size_t)c]);
            std::swap(b[piv], b[c]);
        }
        for (int r = c + 1; r < 3; ++r) {
            double f = a(r, c) / a(c, c);
            for (int j = c; j < 3; ++j) a(r, j) -= f * a(c, j);
            b[r] -= f * b[c];
        }
    }
    Vec3 x;
    for (int r = 2; r >= 0; --r) {
        double s = b[r];
        for (int j = r + 1; j < 3; ++j) s -= a(r, j) * x[j];
        x[r] = s / a(r, r);
    }
    return x;
}

// quadratic form y^T a^{-1} y without forming the inverse
inline double quad_form_inv(const Mat3& a, const Vec3& y) {
    Vec3 x = solve3(a, y);
    return y[0] * x[0] + y[1] * x[1] + y[2] * x[2];
}

inline bool positive_definite3(const Mat3& a) {
    double d1 = a(0, 0);
    double d2 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    return d1 > 0.0 && d2 > 0.0 && det3(a) > 0.0;
}

}  // namespace rksat

#pragma once

#include "rksat/genfunc.hpp"

namespace rksat {

// saddle of the first-moment exponent: a_q(x) = k/2 - 1
struct SaddlePoint1D {
    double x = 0.0;
    double residual = 0.0;  // |a_q(x) - (k/2 - 1)|
    AB ab;                  // a_q, b_q at x
};
SaddlePoint1D solve_saddle_1d(int k, Variant v);

// exponential growth rate (1/n) ln E[N] at clause density alpha
double first_moment_rate(int k, Variant v, double alpha);
// density where the rate crosses zero: ln 2 / rate_slope(x_saddle)
double upper_bound_alpha(int k, Variant v);
// polynomial prefactor of E[N] at the saddle: sqrt(k / (4 b_q(x)))
double first_moment_prefactor(int k, Variant v);

// closed-form lower estimate of the SAT upper bound: 2^k ln2 / D(k) with
//   D(k) = (1-2^{-(k+1)})^{-k} + k 2^{-(k+4)} + 2^{-(k+2)}(1-2^{-(k+1)})^{-2k} - 2^{-(k+1)}
struct LargeKBound {
    double denominator = 0.0;
    double bound = 0.0;  // 2^k ln2 / denominator
    double cap = 0.0;    // 2^k ln2
};
LargeKBound explicit_large_k_bound(int k);

// second-moment lower bound for the uniform ensemble: 2^k ln2 - (k+1) ln2 / 2 - 1
double uniform_lower_bound(int k);

}  // namespace rksat

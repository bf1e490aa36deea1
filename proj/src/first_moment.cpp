#include "rksat/first_moment.hpp"

#include <cmath>

#include "rksat/errors.hpp"

namespace rksat {

SaddlePoint1D solve_saddle_1d(int k, Variant v) {
    double target = 0.5 * k - 1.0;
    if (v == Variant::NAE) {
        // q_NAE = ((1+x)^k - 1 - x^k)/x has palindromic coefficients, so
        // a_q(1) = (k-2)/2 = target exactly and x = 1 is the unique saddle.
        // Returning 1.0 (rather than a solver approximation 1 +/- eps) keeps
        // rate_slope's cancelling terms k(ln2 - L) and (k/2)ln x exactly zero,
        // which matters once the slope itself is O(2^{-k}).
        SaddlePoint1D s;
        s.x = 1.0;
        s.ab = eval_aq_bq(k, v, 1.0);
        s.residual = std::fabs(s.ab.a - target);
        if (!(s.residual < 1e-9))
            throw inconclusive_error("first-moment saddle identity failed for k=" +
                                     std::to_string(k));
        return s;
    }
    double lo = 1e-9, hi = 1e9;
    // a_q is increasing (b_q > 0): a_q(0+) = 0, a_q(inf) = k-1 (SAT) or k-2 (NAE)
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * std::fmax(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        (eval_aq_bq(k, v, mid).a < target ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it) {  // Newton polish, d a_q/dx = b_q/x
        AB ab = eval_aq_bq(k, v, x);
        double step = (ab.a - target) * x / ab.b;
        if (!(std::fabs(step) < 0.5 * x)) break;
        x -= step;
    }
    SaddlePoint1D s;
    s.x = x;
    s.ab = eval_aq_bq(k, v, x);
    s.residual = std::fabs(s.ab.a - target);
    if (!(s.residual < 1e-9))
        throw inconclusive_error("first-moment saddle did not converge for k=" + std::to_string(k));
    return s;
}

double first_moment_rate(int k, Variant v, double alpha) {
    SaddlePoint1D s = solve_saddle_1d(k, v);
    return M_LN2 - alpha * rate_slope(k, v, s.x);
}

double upper_bound_alpha(int k, Variant v) {
    SaddlePoint1D s = solve_saddle_1d(k, v);
    return M_LN2 / rate_slope(k, v, s.x);
}

double first_moment_prefactor(int k, Variant v) {
    SaddlePoint1D s = solve_saddle_1d(k, v);
    return std::sqrt(k / (4.0 * s.ab.b));
}

LargeKBound explicit_large_k_bound(int k) {
    LargeKBound out;
    double t = std::ldexp(1.0, -(k + 1));  // 2^{-(k+1)}
    double lg = std::log1p(-t);            // ln(1 - 2^{-(k+1)})
    out.denominator = std::exp(-k * lg) + k * std::ldexp(1.0, -(k + 4)) +
                      std::ldexp(1.0, -(k + 2)) * std::exp(-2.0 * k * lg) - t;
    out.cap = std::ldexp(M_LN2, k);
    out.bound = out.cap / out.denominator;
    return out;
}

double uniform_lower_bound(int k) {
    return std::ldexp(M_LN2, k) - 0.5 * (k + 1) * M_LN2 - 1.0;
}

}  // namespace rksat

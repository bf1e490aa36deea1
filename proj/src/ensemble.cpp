#include "rksat/ensemble.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "rksat/errors.hpp"

namespace rksat {

namespace {

void check_k(int k) {
    if (k < 3 || k > 64) throw non_realizable("k must be in [3, 64], got " + std::to_string(k));
}

}  // namespace

DegreeProfile make_profile(int k, double alpha) {
    check_k(k);
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw non_realizable("alpha must be positive and finite");
    DegreeProfile p;
    p.k = k;
    p.alpha = alpha;
    double t = 0.5 * k * alpha;
    // snap to the integer grid so densities like 2r/k passed through doubles
    // land on the strictly regular profile
    long long r = (long long)std::floor(t + 1e-9);
    double l1 = t - (double)r;
    if (l1 < 1e-9) l1 = 0.0;
    p.r = r;
    p.lambda_r1 = l1;
    p.lambda_r = 1.0 - l1;
    p.strictly_regular = (l1 == 0.0);
    return p;
}

DegreeProfile make_profile_exact(int k, long long num, long long den) {
    check_k(k);
    if (den <= 0 || num <= 0) throw non_realizable("alpha must be a positive rational");
    long long g = std::gcd(num, den);
    num /= g;
    den /= g;
    DegreeProfile p;
    p.k = k;
    p.alpha_num = num;
    p.alpha_den = den;
    p.alpha = (double)num / (double)den;
    long long tn = (long long)k * num;  // k*alpha/2 = tn / td
    long long td = 2 * den;
    p.r = tn / td;
    long long rem = tn % td;
    p.lambda_r1 = (double)rem / (double)td;
    p.lambda_r = 1.0 - p.lambda_r1;
    p.strictly_regular = (rem == 0);
    return p;
}

DegreeProfile profile_from_degree(int k, long long r) {
    if (r < 1) throw non_realizable("literal degree r must be >= 1");
    return make_profile_exact(k, 2 * r, k);
}

FiniteInstanceShape make_shape(const DegreeProfile& profile, long long n) {
    if (n < 1) throw non_realizable("n must be >= 1");
    FiniteInstanceShape s;
    s.profile = profile;
    s.n = n;
    if (profile.exact()) {
        __int128 mn = (__int128)profile.alpha_num * n;
        if (mn % profile.alpha_den != 0)
            throw non_realizable("m = alpha*n is not an integer for n = " + std::to_string(n));
        __int128 m = mn / profile.alpha_den;
        if (m > (__int128)1 << 60) throw too_large("clause count overflows");
        s.m = (long long)m;
    } else {
        double md = profile.alpha * (double)n;
        long long m = (long long)std::llround(md);
        if (std::fabs(md - (double)m) > 1e-6 * std::fmax(1.0, std::fabs(md)))
            throw non_realizable("m = alpha*n is not an integer for n = " + std::to_string(n));
        s.m = m;
    }
    if (s.m < 1) throw non_realizable("shape has no clauses");
    s.edges = (long long)profile.k * s.m;
    if (s.edges % 2 != 0)
        throw non_realizable("edge total k*m = " + std::to_string(s.edges) + " is odd");
    long long half = s.edges / 2;
    s.n_r1 = half - profile.r * n;
    s.n_r = n - s.n_r1;
    if (s.n_r1 < 0 || s.n_r < 0)
        throw non_realizable("degree classes infeasible: n_r1 = " + std::to_string(s.n_r1));
    if (profile.strictly_regular && s.n_r1 != 0)
        throw non_realizable("strictly regular profile with nonzero n_r1");
    return s;
}

FiniteInstanceShape shape_from_counts(int k, long long n, long long m) {
    if (n < 1 || m < 1) throw non_realizable("need n >= 1 and m >= 1");
    return make_shape(make_profile_exact(k, m, n), n);
}

}  // namespace rksat

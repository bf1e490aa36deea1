#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rksat/first_moment.hpp"

using namespace rksat;

namespace {

// printed reference values, 6 significant digits; tolerance is two units in
// the last printed digit to absorb the table's own rounding
struct Ref {
    int k;
    double sat, nae;
    double tol_sat, tol_nae;
};
constexpr Ref kUpperBounds[] = {
    {3, 3.78222, 2.40942, 2e-5, 2e-5},   {4, 9.10776, 5.19089, 2e-5, 2e-5},
    {7, 85.8791, 44.0139, 2e-4, 2e-4},   {10, 705.9533, 354.545, 2e-4, 2e-3},
    {15, 22707.5, 11356.2, 2e-1, 2e-1},  {17, 90845.9, 45425.7, 2e-1, 2e-1},
};

double nae_upper_closed_form(int k) {
    // saddle sits at x = 1, so the zero of the rate is ln2 / (-ln(1 - 2^{1-k}))
    return M_LN2 / -std::log1p(-std::ldexp(1.0, 1 - k));
}

}  // namespace

TEST_CASE("upper bounds reproduce the reference table") {
    for (const Ref& ref : kUpperBounds) {
        CAPTURE(ref.k);
        CHECK(std::abs(upper_bound_alpha(ref.k, Variant::SAT) - ref.sat) <= ref.tol_sat);
        CHECK(std::abs(upper_bound_alpha(ref.k, Variant::NAE) - ref.nae) <= ref.tol_nae);
    }
}

TEST_CASE("NAE saddle is exactly x = 1 and matches the closed form") {
    for (int k = 3; k <= 50; ++k) {
        CAPTURE(k);
        SaddlePoint1D sp = solve_saddle_1d(k, Variant::NAE);
        CHECK(std::abs(sp.x - 1.0) <= 1e-12);
        double au = upper_bound_alpha(k, Variant::NAE);
        double cf = nae_upper_closed_form(k);
        CHECK(std::abs(au - cf) <= 1e-12 * cf);
    }
}

TEST_CASE("saddle residuals are tiny and b_q is positive") {
    for (int k = 3; k <= 30; ++k) {
        for (Variant v : {Variant::SAT, Variant::NAE}) {
            CAPTURE(k);
            SaddlePoint1D sp = solve_saddle_1d(k, v);
            CHECK(sp.residual <= 1e-9);
            CHECK(sp.x > 0.0);
            CHECK(sp.ab.b > 0.0);
            CHECK(std::abs(sp.ab.a - (k / 2.0 - 1.0)) <= 1e-9);
        }
    }
    // SAT saddle drifts toward 1 from below as k grows
    CHECK(solve_saddle_1d(3, Variant::SAT).x < 1.0);
    CHECK(solve_saddle_1d(17, Variant::SAT).x > 0.999);
}

TEST_CASE("growth rate is affine in alpha and crosses zero at the upper bound") {
    for (int k : {3, 4, 7, 10}) {
        for (Variant v : {Variant::SAT, Variant::NAE}) {
            CAPTURE(k);
            double au = upper_bound_alpha(k, v);
            double r1 = first_moment_rate(k, v, 0.25 * au);
            double r2 = first_moment_rate(k, v, 0.50 * au);
            double r3 = first_moment_rate(k, v, 0.75 * au);
            CHECK(std::abs((r3 - r2) - (r2 - r1)) <= 1e-12 * (std::abs(r1) + 1.0));
            CHECK(std::abs(first_moment_rate(k, v, au)) <= 1e-10);
            CHECK(std::abs(first_moment_rate(k, v, 0.0) - M_LN2) <= 1e-14);
            CHECK(first_moment_rate(k, v, 1.01 * au) < 0.0);
        }
    }
}

TEST_CASE("upper bound respects the 2^k ln2 cap") {
    for (int k = 3; k <= 20; ++k) {
        CAPTURE(k);
        double cap = std::ldexp(M_LN2, k);
        CHECK(upper_bound_alpha(k, Variant::SAT) <= cap);
        CHECK(upper_bound_alpha(k, Variant::NAE) <= 0.5 * cap);
    }
}

TEST_CASE("NAE upper bound approaches 2^{k-1} ln2 - ln2/2 from below, monotonically") {
    double prev = 1.0;
    for (int k = 3; k <= 20; ++k) {
        CAPTURE(k);
        double gap = upper_bound_alpha(k, Variant::NAE) -
                     (std::ldexp(M_LN2, k - 1) - 0.5 * M_LN2);
        CHECK(gap < 0.0);
        CHECK(std::abs(gap) < prev);
        prev = std::abs(gap);
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("explicit closed-form upper estimate") {
    // cap: 2^k ln2; the estimate stays below it and above the true zero crossing
    LargeKBound b3 = explicit_large_k_bound(3);
    CHECK(b3.cap == doctest::Approx(8 * M_LN2).epsilon(1e-15));
    CHECK(b3.bound <= b3.cap);
    CHECK(b3.denominator > 1.0);

    LargeKBound b8 = explicit_large_k_bound(8);
    CHECK(b8.bound >= upper_bound_alpha(8, Variant::SAT));

    LargeKBound b17 = explicit_large_k_bound(17);
    CHECK(std::abs(b17.bound - b17.cap) <= 0.01 * b17.cap);

    // monotone sanity: the relative correction shrinks with k
    double prev = 10.0;
    for (int k = 3; k <= 25; ++k) {
        LargeKBound b = explicit_large_k_bound(k);
        double rel = b.cap / b.bound - 1.0;
        CHECK(rel < prev);
        CHECK(rel > -1e-15);
        prev = rel;
    }
}

TEST_CASE("uniform-ensemble lower bound") {
    CHECK(uniform_lower_bound(3) == doctest::Approx(6 * M_LN2 - 1.0).epsilon(1e-15));
    CHECK(std::abs(uniform_lower_bound(3) - 3.1588831) <= 1e-6);
    // the ensemble's lower bound 2r*/k = 8/3 sits below the uniform one by ~0.4922
    CHECK(std::abs((uniform_lower_bound(3) - 8.0 / 3.0) - 0.492216) <= 1e-6);
    for (int k = 3; k <= 20; ++k) {
        CAPTURE(k);
        CHECK(uniform_lower_bound(k) < upper_bound_alpha(k, Variant::SAT));
    }
}

TEST_CASE("prefactor is finite and positive") {
    for (int k : {3, 4, 7, 10, 17}) {
        for (Variant v : {Variant::SAT, Variant::NAE}) {
            CAPTURE(k);
            double pf = first_moment_prefactor(k, v);
            CHECK(pf > 0.0);
            CHECK(std::isfinite(pf));
        }
    }
}

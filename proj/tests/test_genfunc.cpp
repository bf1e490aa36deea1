#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "rksat/genfunc.hpp"

using namespace rksat;

TEST_CASE("hand values at k=3, x=1") {
    // p = x^3+3x^2+3x: a_q(1) = 12/7 - 1, b_q(1) = 12/7 + 12/7 - (12/7)^2
    AB s = eval_aq_bq(3, Variant::SAT, 1.0);
    CHECK(s.a == doctest::Approx(5.0 / 7.0).epsilon(1e-13));
    CHECK(s.b == doctest::Approx(24.0 / 49.0).epsilon(1e-13));
    // p_nae = 3x^2+3x: a_q(1) = 3/2 - 1, b_q(1) = 1 + 3/2 - 9/4
    AB n = eval_aq_bq(3, Variant::NAE, 1.0);
    CHECK(n.a == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(n.b == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("ln_p matches direct evaluation at small k") {
    for (double x : {0.1, 0.7, 1.0, 2.3}) {
        CHECK(ln_p(3, Variant::SAT, x) ==
              doctest::Approx(std::log(std::pow(1 + x, 3) - 1)).epsilon(1e-13));
        CHECK(ln_p(3, Variant::NAE, x) ==
              doctest::Approx(std::log(std::pow(1 + x, 3) - 1 - x * x * x)).epsilon(1e-13));
    }
}

TEST_CASE("NAE ratios survive extreme x") {
    // x p'/p -> k-1 as x -> inf for the NAE polynomial
    AB big = eval_aq_bq(3, Variant::NAE, 1e8);
    CHECK(big.a == doctest::Approx(1.0).epsilon(1e-6));  // a_q = (k-1) - 1
    AB tiny = eval_aq_bq(3, Variant::NAE, 1e-8);
    CHECK(tiny.a == doctest::Approx(0.0).epsilon(1e-6));
    // large k: a_p(1) = k/2 exactly for NAE
    AB mid = eval_aq_bq(40, Variant::NAE, 1.0);
    CHECK(mid.a == doctest::Approx(19.0).epsilon(1e-12));
}

TEST_CASE("diagonal identity f(x, x^2, x) = p(x)^2") {
    for (Variant v : {Variant::SAT, Variant::NAE})
        for (int k : {3, 4, 7, 10, 17})
            for (double x : {0.05, 0.3, 1.0, 2.5}) {
                Vec3 t;
                t[0] = x;
                t[1] = x * x;
                t[2] = x;
                CHECK(ln_f(k, v, t) == doctest::Approx(2.0 * ln_p(k, v, x)).epsilon(1e-12));
                // chain rule along the diagonal: a1 + 2 a2 + a3 = 2 x p'/p
                AfBf e = eval_af_Bf(k, v, t);
                double ap = eval_aq_bq(k, v, x).a + 1.0;
                CHECK(e.a[0] == doctest::Approx(e.a[2]).epsilon(1e-12));
                CHECK(e.a[0] + 2.0 * e.a[1] + e.a[2] == doctest::Approx(2.0 * ap).epsilon(1e-12));
            }
}

TEST_CASE("B_f matches finite differences of a_f") {
    Vec3 t;
    t[0] = 0.8;
    t[1] = 1.7;
    t[2] = 1.1;
    for (Variant v : {Variant::SAT, Variant::NAE}) {
        AfBf e = eval_af_Bf(4, v, t);
        for (int j = 0; j < 3; ++j) {
            double h = 1e-6 * t[j];
            Vec3 tp = t, tm = t;
            tp[j] += h;
            tm[j] -= h;
            AfBf ep = eval_af_Bf(4, v, tp), em = eval_af_Bf(4, v, tm);
            for (int i = 0; i < 3; ++i) {
                double fd = t[j] * (ep.a[i] - em.a[i]) / (2 * h);
                CHECK(e.B(i, j) == doctest::Approx(fd).epsilon(2e-5));
            }
        }
        // symmetry of the log-Hessian
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(e.B(i, j) == doctest::Approx(e.B(j, i)).epsilon(1e-11));
    }
}

TEST_CASE("entropy basics") {
    CHECK(entropy(0.5) == doctest::Approx(M_LN2).epsilon(1e-15));
    CHECK(entropy(0.0) == 0.0);
    CHECK(entropy(1.0) == 0.0);
    CHECK(entropy(0.1) == doctest::Approx(entropy(0.9)).epsilon(1e-14));
    CHECK(entropy(1e-12) == doctest::Approx(1e-12 * (std::log(1e12) + 1)).epsilon(1e-9));
}

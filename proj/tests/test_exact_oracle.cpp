#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <vector>

#include "rksat/errors.hpp"
#include "rksat/exact_oracle.hpp"

using namespace rksat;

namespace {

double to_double(const BigRat& q) { return q.convert_to<double>(); }

BigInt pow_big(BigInt base, int e) {
    BigInt out = 1;
    for (int i = 0; i < e; ++i) out *= base;
    return out;
}

}  // namespace

TEST_CASE("factorials and binomials") {
    CHECK(factorial_big(0) == 1);
    CHECK(factorial_big(10) == 3628800);
    CHECK(binomial_big(10, 3) == 120);
    CHECK(binomial_big(10, 0) == 1);
    CHECK(binomial_big(4, 7) == 0);
}

TEST_CASE("clause polynomial coefficients") {
    // p(x) = (1+x)^3 - 1 = 3x + 3x^2 + x^3; NAE drops the all-true x^3 term
    CHECK(power_coef_uni(3, Variant::SAT, 1, 0) == 0);
    CHECK(power_coef_uni(3, Variant::SAT, 1, 1) == 3);
    CHECK(power_coef_uni(3, Variant::SAT, 1, 2) == 3);
    CHECK(power_coef_uni(3, Variant::SAT, 1, 3) == 1);
    CHECK(power_coef_uni(3, Variant::NAE, 1, 3) == 0);
    CHECK(power_coef_uni(3, Variant::SAT, 2, 7) == 0);  // beyond degree

    for (int k : {3, 4, 5}) {
        for (long long m : {1LL, 2LL}) {
            for (Variant v : {Variant::SAT, Variant::NAE}) {
                CAPTURE(k);
                CAPTURE(m);
                BigInt mass = 0;
                for (long long t = 0; t <= k * m; ++t) mass += power_coef_uni(k, v, m, t);
                BigInt expect = pow_big((BigInt(1) << k) - (v == Variant::SAT ? 1 : 2), (int)m);
                CHECK(mass == expect);
            }
        }
    }
}

TEST_CASE("pair polynomial: nonnegative, mass, exact diagonal identity") {
    for (int k = 3; k <= 9; ++k) {
        for (Variant v : {Variant::SAT, Variant::NAE}) {
            CAPTURE(k);
            CAPTURE(to_string(v));
            auto monos = pair_poly_monomials(k, v);
            BigInt mass = 0;
            std::vector<BigInt> diag((size_t)(2 * k + 1), BigInt(0));
            for (const TriCoef& tc : monos) {
                CHECK(tc.c >= 0);
                CHECK(tc.e1 >= 0);
                CHECK(tc.e2 >= 0);
                CHECK(tc.e3 >= 0);
                CHECK(tc.e1 + tc.e2 + tc.e3 <= k);
                mass += tc.c;
                diag[(size_t)(tc.e1 + 2 * tc.e2 + tc.e3)] += tc.c;
            }
            BigInt side = (BigInt(1) << k) - (v == Variant::SAT ? 1 : 2);
            CHECK(mass == side * side);

            // f(x, x^2, x) = p(x)^2 coefficient by coefficient
            std::vector<BigInt> p((size_t)(k + 1), BigInt(0));
            for (long long t = 0; t <= k; ++t) p[(size_t)t] = power_coef_uni(k, v, 1, t);
            for (long long d = 0; d <= 2 * k; ++d) {
                BigInt conv = 0;
                for (long long i = std::max(0LL, d - k); i <= std::min((long long)k, d); ++i)
                    conv += p[(size_t)i] * p[(size_t)(d - i)];
                CHECK(diag[(size_t)d] == conv);
            }
        }
    }
}

TEST_CASE("pair power truncation keeps the in-cap coefficients exact") {
    auto full = pair_power_monomials(3, Variant::SAT, 2, 6, 6, 6);
    BigInt mass = 0;
    for (const TriCoef& tc : full) mass += tc.c;
    CHECK(mass == BigInt(49) * 49);

    auto capped = pair_power_monomials(3, Variant::SAT, 2, 2, 2, 2);
    std::map<std::tuple<long long, long long, long long>, BigInt> lut;
    for (const TriCoef& tc : full) lut[{tc.e1, tc.e2, tc.e3}] = tc.c;
    for (const TriCoef& tc : capped) {
        CHECK(tc.e1 <= 2);
        CHECK(tc.e2 <= 2);
        CHECK(tc.e3 <= 2);
        CHECK(lut.at({tc.e1, tc.e2, tc.e3}) == tc.c);
    }
}

TEST_CASE("frozen anchors at the 6-edge shape (k=3, n=1, m=2)") {
    FiniteInstanceShape sh = shape_from_counts(3, 1, 2);
    CHECK(sh.edges == 6);
    CHECK(sh.profile.r == 3);
    CHECK(sh.n_r1 == 0);

    BigRat m1 = exact_first_moment(sh, Variant::SAT);
    CHECK(m1 == BigRat(9, 5));
    BigRat m2 = exact_second_moment_strict(sh, Variant::SAT);
    CHECK(m2 == BigRat(18, 5));
    CHECK(exact_second_moment_2reg(sh, Variant::SAT) == m2);

    TinyEnumeration te = enumerate_tiny(sh, Variant::SAT);
    CHECK(te.total == 720);
    CHECK(te.sat_formula_count == 648);
    CHECK(te.moment1 == m1);
    CHECK(te.moment2 == m2);

    // the NAE mean coincides here: at target x^3 the all-true x^3 term of one
    // clause would need the other clause to contribute x^0, and p has no
    // constant term, so dropping x^3 does not change the coefficient
    TinyEnumeration tn = enumerate_tiny(sh, Variant::NAE);
    CHECK(exact_first_moment(sh, Variant::NAE) == tn.moment1);
    CHECK(tn.moment1 == BigRat(9, 5));
    CHECK(exact_second_moment_strict(sh, Variant::NAE) == tn.moment2);
}

TEST_CASE("formula moments equal enumeration on every tiny shape") {
    auto shapes = tiny_shape_suite(8, 6);
    REQUIRE(shapes.size() >= 8);
    for (const FiniteInstanceShape& sh : shapes) {
        for (Variant v : {Variant::SAT, Variant::NAE}) {
            CAPTURE(sh.profile.k);
            CAPTURE(sh.n);
            CAPTURE(sh.m);
            CAPTURE(to_string(v));
            TinyEnumeration te = enumerate_tiny(sh, v);
            BigRat m1 = exact_first_moment(sh, v);
            CHECK(m1 == te.moment1);
            BigRat m2 = exact_second_moment_2reg(sh, v);
            CHECK(m2 == te.moment2);
            if (sh.n_r1 == 0) CHECK(exact_second_moment_strict(sh, v) == te.moment2);

            // structural facts: 0 <= E(N) <= 2^n, E(N^2) >= max(E(N), E(N)^2)
            CHECK(m1 >= 0);
            CHECK(m1 <= BigRat(BigInt(1) << sh.n));
            CHECK(m2 >= m1);
            CHECK(m2 >= m1 * m1);
        }
    }
}

TEST_CASE("oracle guards") {
    CHECK_THROWS_AS(exact_first_moment(shape_from_counts(3, 1002, 668), Variant::SAT),
                    too_large);
    CHECK_THROWS_AS(exact_second_moment_strict(shape_from_counts(3, 11, 22), Variant::SAT),
                    too_large);
    CHECK_THROWS_AS(exact_second_moment_2reg(shape_from_counts(3, 11, 22), Variant::SAT),
                    too_large);
    CHECK_THROWS_AS(enumerate_tiny(shape_from_counts(3, 2, 4), Variant::SAT), too_large);
    // strict evaluator rejects mixed-degree shapes
    CHECK_THROWS_AS(exact_second_moment_strict(shape_from_counts(7, 3, 2), Variant::SAT),
                    non_realizable);
}

TEST_CASE("Monte Carlo agrees with the exact oracle within 4 standard errors") {
    // mixed-degree shape: k=7, n=3, m=2 (degrees 2,2,3)
    FiniteInstanceShape mixed = shape_from_counts(7, 3, 2);
    CHECK(mixed.n_r1 == 1);
    for (Variant v : {Variant::SAT, Variant::NAE}) {
        CAPTURE(to_string(v));
        MonteCarloMoments mc = monte_carlo_moments(mixed, v, 20000, 20240814);
        double e1 = to_double(exact_first_moment(mixed, v));
        double e2 = to_double(exact_second_moment_2reg(mixed, v));
        CHECK(std::abs(mc.mean1 - e1) <= 4.0 * mc.stderr1);
        CHECK(std::abs(mc.mean2 - e2) <= 4.0 * mc.stderr2);
        CHECK(mc.stderr1 > 0.0);
    }

    // strictly regular generator pipeline shape: k=3, n=4, r=3 (m=8)
    FiniteInstanceShape strict = shape_from_counts(3, 4, 8);
    CHECK(strict.n_r1 == 0);
    CHECK(strict.profile.r == 3);
    MonteCarloMoments mc = monte_carlo_moments(strict, Variant::SAT, 10000, 7);
    double e1 = to_double(exact_first_moment(strict, Variant::SAT));
    CHECK(std::abs(mc.mean1 - e1) <= 4.0 * mc.stderr1);
}

TEST_CASE("tiny shape suite covers strict, mixed and degree-0 shapes") {
    auto shapes = tiny_shape_suite(10, 6);
    bool strict = false, mixed = false, degree0 = false;
    bool anchor = false;
    for (const FiniteInstanceShape& sh : shapes) {
        CHECK(sh.edges <= 10);
        CHECK(sh.n <= 6);
        if (sh.n_r1 == 0) strict = true;
        if (sh.n_r1 > 0 && sh.profile.r >= 1) mixed = true;
        if (sh.profile.r == 0) degree0 = true;
        if (sh.profile.k == 3 && sh.n == 1 && sh.m == 2) anchor = true;
    }
    CHECK(strict);
    CHECK(mixed);
    CHECK(degree0);
    CHECK(anchor);
}

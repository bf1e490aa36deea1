#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rksat/ensemble.hpp"
#include "rksat/genfunc.hpp"

namespace rksat {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

BigInt factorial_big(long long n);
BigInt binomial_big(long long n, long long r);

// coefficient of x^target in p(x)^power for the variant's clause polynomial
BigInt power_coef_uni(int k, Variant v, long long power, long long target);

// monomials of the pair polynomial f (exponents of t1,t2,t3 with coefficient)
struct TriCoef {
    long long e1 = 0, e2 = 0, e3 = 0;
    BigInt c;
};
std::vector<TriCoef> pair_poly_monomials(int k, Variant v);
// monomials of f^power, truncated to e1<=cap1, e2<=cap2, e3<=cap3
std::vector<TriCoef> pair_power_monomials(int k, Variant v, long long power, long long cap1,
                                          long long cap2, long long cap3);

// permutation-model moments as exact rationals
BigRat exact_first_moment(const FiniteInstanceShape& shape, Variant v);   // edges <= 2000
BigRat exact_second_moment_strict(const FiniteInstanceShape& shape, Variant v);  // edges <= 60
BigRat exact_second_moment_2reg(const FiniteInstanceShape& shape, Variant v);    // edges <= 60

// brute-force enumeration over all edge matchings (edges <= 10, n <= 25)
struct TinyEnumeration {
    BigInt sat_formula_count;  // matchings whose formula the all-false assignment satisfies
    BigInt total;              // edges!
    BigRat moment1;
    BigRat moment2;
};
TinyEnumeration enumerate_tiny(const FiniteInstanceShape& shape, Variant v);

struct MonteCarloMoments {
    double mean1 = 0, stderr1 = 0;
    double mean2 = 0, stderr2 = 0;
    long long samples = 0;
    std::uint64_t seed = 0;
};
MonteCarloMoments monte_carlo_moments(const FiniteInstanceShape& shape, Variant v,
                                      long long samples, std::uint64_t seed);

// every realizable shape with edges <= max_edges and n <= max_n
std::vector<FiniteInstanceShape> tiny_shape_suite(long long max_edges = 10, long long max_n = 6);

}  // namespace rksat

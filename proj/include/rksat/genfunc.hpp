#pragma once

#include <string>

#include "rksat/linalg.hpp"

namespace rksat {

enum class Variant { SAT, NAE };

const char* to_string(Variant v);
Variant variant_from_string(const std::string& s);

// Clause-type generating polynomials over satisfying literal patterns:
//   p(x)     = (1+x)^k - 1                       (at least one true literal)
//   p_nae(x) = (1+x)^k - 1 - x^k                 (neither all false nor all true)
// and q(x) = p(x)/x. All evaluators below use ratio forms in w = x/(1+x) so they
// stay accurate for large k where (1+x)^k overflows or differences cancel.

// log-derivative operators of q: a_q(x) = x q'(x)/q(x), b_q(x) = x a_q'(x)
struct AB {
    double a = 0.0;
    double b = 0.0;
};
AB eval_aq_bq(int k, Variant v, double x);

double ln_p(int k, Variant v, double x);
// rate slope per clause density: k*ln(2/(1+x)) + (k/2)*ln(x) - ln(p(x)/(1+x)^k)
double rate_slope(int k, Variant v, double x);

// Pair generating polynomial over compatible pattern pairs, variables
// t1 (true only in the first assignment), t2 (true in both), t3 (true only in
// the second):
//   f(t)     = (1+t1+t2+t3)^k - (1+t1)^k - (1+t3)^k + 1
//   f_nae(t) = f(t) - (t1+t2)^k - (t2+t3)^k + t1^k + t2^k + t3^k
// a_f[i] = t_i d(ln f)/d(t_i); B_f[i][j] = t_j d(a_f[i])/d(t_j) (symmetric).
struct AfBf {
    Vec3 a;
    Mat3 B;
    double ln_f = 0.0;
};
AfBf eval_af_Bf(int k, Variant v, const Vec3& t);
double ln_f(int k, Variant v, const Vec3& t);

// binary entropy with stable tails, h(0) = h(1) = 0
double entropy(double g);

}  // namespace rksat

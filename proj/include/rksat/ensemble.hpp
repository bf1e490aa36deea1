#pragma once

#include <cstdint>
#include <string>

namespace rksat {

// Literal-degree profile of the ensemble at clause density alpha = m/n.
// Literals fall into two degree classes r and r+1 with fractions
// lambda_r = 1 + r - k*alpha/2 and lambda_r1 = k*alpha/2 - r, r = floor(k*alpha/2).
struct DegreeProfile {
    int k = 0;
    double alpha = 0.0;
    long long alpha_num = 0;  // exact alpha = alpha_num/alpha_den when alpha_den != 0
    long long alpha_den = 0;
    long long r = 0;
    double lambda_r = 1.0;
    double lambda_r1 = 0.0;
    bool strictly_regular = true;

    bool exact() const { return alpha_den != 0; }
};

DegreeProfile make_profile(int k, double alpha);
DegreeProfile make_profile_exact(int k, long long alpha_num, long long alpha_den);
// strictly regular ensemble with literal degree r (alpha = 2r/k)
DegreeProfile profile_from_degree(int k, long long r);

// Concrete finite instance parameters: n variables, m = alpha*n clauses,
// n_r variables of literal degree r and n_r1 of degree r+1.
struct FiniteInstanceShape {
    DegreeProfile profile;
    long long n = 0;
    long long m = 0;
    long long edges = 0;  // k*m, must be even
    long long n_r = 0;
    long long n_r1 = 0;
};

FiniteInstanceShape make_shape(const DegreeProfile& profile, long long n);
FiniteInstanceShape shape_from_counts(int k, long long n, long long m);

}  // namespace rksat

#pragma once

#include <optional>

#include "rksat/first_moment.hpp"
#include "rksat/second_moment.hpp"

namespace rksat {

struct VariantBounds {
    Variant variant = Variant::SAT;
    double x_saddle = 0;
    double alpha_u = 0;
    double prefactor = 0;
    long long r_star = 0;
    long long alpha_l_num = 0, alpha_l_den = 0;  // 2 r*/k reduced
    double alpha_l = 0;
    double sigma_s_sq = 0, c_f = 0;
    double prob = 0, prob_raw = 0;
    double margin_at_r_star = 0, margin_at_next = 0;
    long long scans = 0;
    double seconds = 0;
};

struct BoundsRow {
    int k = 0;
    std::optional<VariantBounds> sat, nae;
    double uniform_lower = 0;          // uniform-ensemble second-moment bound
    double gap = 0;                    // uniform_lower - alpha_l(SAT)
    LargeKBound explicit_upper;        // closed-form estimate of the SAT upper bound
};

VariantBounds compute_variant_bounds(int k, Variant v, bool assume_monotone,
                                     double step = 1e-3);
BoundsRow compute_bounds_row(int k, bool with_sat, bool with_nae, bool assume_monotone);

}  // namespace rksat

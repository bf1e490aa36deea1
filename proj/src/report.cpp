#include "rksat/report.hpp"

#include <chrono>
#include <numeric>

namespace rksat {

VariantBounds compute_variant_bounds(int k, Variant v, bool assume_monotone, double step) {
    auto t0 = std::chrono::steady_clock::now();
    VariantBounds out;
    out.variant = v;
    SaddlePoint1D sp = solve_saddle_1d(k, v);
    out.x_saddle = sp.x;
    out.alpha_u = upper_bound_alpha(k, v);
    out.prefactor = first_moment_prefactor(k, v);
    RStarReport rs = find_r_star(k, v, assume_monotone, step);
    out.r_star = rs.r_star;
    out.alpha_l = rs.alpha_l;
    long long g = std::gcd(2 * rs.r_star, (long long)k);
    out.alpha_l_num = 2 * rs.r_star / g;
    out.alpha_l_den = k / g;
    out.margin_at_r_star = rs.margin_at_r_star;
    out.margin_at_next = rs.margin_at_next;
    out.scans = rs.scans;
    SigmaS sg = sigma_s_sq(k, v, rs.r_star);
    out.sigma_s_sq = sg.value;
    out.c_f = sg.c_f;
    ProbBound pb = prob_lower_bound_strict(k, v, rs.r_star);
    out.prob = pb.value;
    out.prob_raw = pb.raw;
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

BoundsRow compute_bounds_row(int k, bool with_sat, bool with_nae, bool assume_monotone) {
    BoundsRow row;
    row.k = k;
    row.uniform_lower = uniform_lower_bound(k);
    row.explicit_upper = explicit_large_k_bound(k);
    if (with_sat) {
        row.sat = compute_variant_bounds(k, Variant::SAT, assume_monotone);
        row.gap = row.uniform_lower - row.sat->alpha_l;
    }
    if (with_nae) row.nae = compute_variant_bounds(k, Variant::NAE, assume_monotone);
    return row;
}

}  // namespace rksat

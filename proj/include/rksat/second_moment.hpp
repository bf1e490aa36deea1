#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rksat/ensemble.hpp"
#include "rksat/first_moment.hpp"
#include "rksat/genfunc.hpp"

namespace rksat {

enum class Verdict { NotDominant, Dominant, Inconclusive };
const char* to_string(Verdict v);

// inner saddle of the pair exponent at fixed overlap, reduced to t3 = t1
struct SaddlePoint3D {
    Vec3 t;
    double residual = 0.0;  // max-norm of a_f(t) - target
    double ln_f = 0.0;      // ln f(t) at the solution
    int iterations = 0;
};

// a_f(t) = (k/2 - theta, theta, k/2 - theta), 0 < theta < k/2
SaddlePoint3D solve_saddle_theta(int k, Variant v, double theta,
                                 const SaddlePoint3D* hint = nullptr);
// overlap form: theta = k*gamma/2 where gamma is the agreeing-variable fraction
SaddlePoint3D solve_overlap_saddle(int k, Variant v, double gamma,
                                   const SaddlePoint3D* hint = nullptr);

// strictly regular pair growth rate s(gamma) at alpha = 2r/k; endpoints use the
// reduced one-variable saddles (gamma=0 collapses onto the NAE polynomial)
double s_gamma(int k, Variant v, long long r, double gamma);
double s_gamma_at(int k, Variant v, long long r, double gamma, const SaddlePoint3D& sp);
// outer stationarity d s/d gamma (vanishes at interior optima)
double stationarity_residual(int k, Variant v, long long r, double gamma,
                             const SaddlePoint3D& sp);

// 2-regular pair growth rate g(gamma_r, gamma_r1) at the profile's density
double g_gamma_2reg(const DegreeProfile& prof, Variant v, double g_r, double g_r1);
double g_gamma_2reg_at(const DegreeProfile& prof, Variant v, double g_r, double g_r1,
                       const SaddlePoint3D& sp);

struct ScanPoint {
    double g1 = 0, g2 = 0;  // strict scans set g2 = g1
    double t1 = 0, t2 = 0;  // endpoint rows carry 0 placeholders
    double s = 0;
    double residual = 0;
};

struct OverlapScan {
    int k = 0;
    Variant variant = Variant::SAT;
    bool two_regular = false;
    long long r = 0;
    double alpha = 0;
    std::vector<ScanPoint> samples;
    double center_value = 0;     // s at gamma = 1/2 (or (1/2, 1/2))
    double max_off_center = 0;   // sup outside the center exclusion zone
    double arg_max1 = 0, arg_max2 = 0;
    double margin = 0;           // center_value - max_off_center
    double curvature = 0;        // strict: s''(1/2); 2-reg: largest Hessian eigenvalue
    double endpoint_low = 0, endpoint_high = 0;
    Verdict verdict = Verdict::Inconclusive;
    bool dominant() const { return verdict == Verdict::Dominant; }
};

// grid step on gamma in [1e-4, 1-1e-4] anchored at 1/2, plus endpoints and
// geometric ladders toward both endpoints; local maxima are golden-section refined
OverlapScan dominance_scan_strict(int k, Variant v, long long r, double step = 1e-3);
// (grid+1)^2 lattice over [0,1]^2 with corner ladders along the diagonal
OverlapScan dominance_scan_2reg(const DegreeProfile& prof, Variant v, int grid = 200);
void write_scan_csv(const OverlapScan& scan, std::ostream& os);

// overlap fluctuation variance at the symmetric point
struct SigmaS {
    double value = 0;  // sigma_s^2: 1 / (4 + k r C_f / 2 - 8 r)
    double c_f = 0;    // (-1,1,-1) B_f^{-1} (-1,1,-1)^T at (x, x^2, x)
};
SigmaS sigma_s_sq(int k, Variant v, long long r);

// asymptotic success probability lower bound 2 sqrt(det B_f) / (sigma_s b_q sqrt(k))
struct ProbBound {
    double value = 0;  // clamped to [0, 1]
    double raw = 0;
};
ProbBound prob_lower_bound_strict(int k, Variant v, long long r);

struct RStarReport {
    long long r_star = 0;
    double alpha_l = 0;  // 2 r* / k
    long long scans = 0;
    double margin_at_r_star = 0;
    double margin_at_next = 0;
};
// largest r whose strict scan is Dominant; failure at r*+1 is verified.
// assume_monotone switches the linear search to bisection over r.
RStarReport find_r_star(int k, Variant v, bool assume_monotone = false, double step = 1e-3);

// 2-regular covariance of the class overlaps and the resulting probability bound
struct Sigma2Report {
    double c_f = 0;
    double m11 = 0, m12 = 0, m22 = 0;  // inverse covariance
    double s11 = 0, s12 = 0, s22 = 0;  // covariance
    double det_sigma = 0;
    ProbBound prob;
};
Sigma2Report sigma_matrix_2reg(const DegreeProfile& prof, Variant v);

// largest alpha (within alpha_tolerance) whose dominance scan passes,
// bisecting between the strict bound 2 r*/k and the first-moment upper bound
double lower_bound_alpha_2reg(int k, Variant v, double alpha_tolerance = 1e-3, int grid = 200,
                              bool assume_monotone = false);

}  // namespace rksat

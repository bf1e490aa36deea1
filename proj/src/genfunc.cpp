#include "rksat/genfunc.hpp"

#include <cmath>
#include <stdexcept>

#include "rksat/errors.hpp"

namespace rksat {

const char* to_string(Variant v) { return v == Variant::SAT ? "sat" : "nae"; }

Variant variant_from_string(const std::string& s) {
    if (s == "sat") return Variant::SAT;
    if (s == "nae") return Variant::NAE;
    throw std::invalid_argument("unknown variant '" + s + "' (expected sat or nae)");
}

namespace {

void check_x(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("x must be positive");
}

struct UniParts {
    double w = 0;       // x/(1+x)
    double L = 0;       // ln(1+x)
    double R = 0;       // p(x)/(1+x)^k
    double lnR = 0;     // ln R without the near-1 precision loss
    double ap = 0;      // x p'(x)/p(x)
    double x2ppp = 0;   // x^2 p''(x)/p(x)
};

// Ratio forms: for SAT p/(1+x)^k = 1-(1+x)^{-k}, x p'/p = k w / R,
// x^2 p''/p = k(k-1) w^2 / R; for NAE subtract the all-true pattern, i.e.
// replace w^j by w^j - w^k in the numerators and R by R - w^k.  The two
// expm1 branches keep R accurate when x is far from 1 in either direction;
// lnR goes through the subtracted mass D = 1 - R (a stable sum of exps)
// whenever D <= 1/2, since log(R) near R = 1 keeps only ulp-level detail.
UniParts uni_parts(int k, Variant v, double x) {
    check_x(x);
    UniParts u;
    u.L = std::log1p(x);
    u.w = x / (1.0 + x);
    double A = std::exp(-k * u.L);         // (1+x)^{-k}
    double R_sat = -std::expm1(-k * u.L);  // 1 - (1+x)^{-k}
    double D;                              // 1 - R
    if (v == Variant::SAT) {
        u.R = R_sat;
        D = A;
        u.ap = k * u.w / u.R;
        u.x2ppp = (double)k * (k - 1) * u.w * u.w / u.R;
    } else if (x <= 1.0) {
        double wk = std::exp(k * (std::log(x) - u.L));
        u.R = R_sat - wk;
        D = A + wk;
        u.ap = k * (u.w - wk) / u.R;
        u.x2ppp = (double)k * (k - 1) * (u.w * u.w - wk) / u.R;
    } else {
        // 1 - w^k = -expm1(-k ln(1+1/x)) avoids cancellation for large x
        double one_minus_wk = -std::expm1(-k * std::log1p(1.0 / x));
        u.R = one_minus_wk - A;
        D = A + std::exp(-k * std::log1p(1.0 / x));
        u.ap = k * (one_minus_wk - 1.0 / (1.0 + x)) / u.R;
        u.x2ppp = (double)k * (k - 1) * (one_minus_wk - (1.0 + u.w) / (1.0 + x)) / u.R;
    }
    u.lnR = (D <= 0.5) ? std::log1p(-D) : std::log(u.R);
    return u;
}

}  // namespace

AB eval_aq_bq(int k, Variant v, double x) {
    UniParts u = uni_parts(k, v, x);
    AB r;
    r.a = u.ap - 1.0;
    r.b = u.x2ppp + u.ap - u.ap * u.ap;
    return r;
}

double ln_p(int k, Variant v, double x) {
    UniParts u = uni_parts(k, v, x);
    return k * u.L + u.lnR;
}

double rate_slope(int k, Variant v, double x) {
    UniParts u = uni_parts(k, v, x);
    return k * (M_LN2 - u.L) + 0.5 * k * std::log(x) - u.lnR;
}

namespace {

struct Piece {
    double c;
    int d[4];  // constant term, then coefficients of t1, t2, t3
};

// f and f_nae as signed sums of k-th powers of 0/1 linear forms
const Piece kSatPieces[] = {
    {+1, {1, 1, 1, 1}},
    {-1, {1, 1, 0, 0}},
    {-1, {1, 0, 0, 1}},
    {+1, {1, 0, 0, 0}},
};
const Piece kNaePieces[] = {
    {+1, {1, 1, 1, 1}},
    {-1, {1, 1, 0, 0}},
    {-1, {1, 0, 0, 1}},
    {+1, {1, 0, 0, 0}},
    {-1, {0, 1, 1, 0}},
    {+1, {0, 1, 0, 0}},
    {-1, {0, 0, 1, 1}},
    {+1, {0, 0, 1, 0}},
    {+1, {0, 0, 0, 1}},
};

struct FParts {
    double F = 0;  // f(t)/S^k, S = 1+t1+t2+t3
    double lnS = 0;
    Vec3 A;        // t_i d_i f / f, pre-division accumulators scaled by F below
    Mat3 H;        // t_i t_j d_i d_j f / f (pure second derivatives)
};

FParts f_parts(int k, Variant v, const Vec3& t) {
    for (int i = 0; i < 3; ++i) check_x(t[i]);
    const Piece* pieces = (v == Variant::SAT) ? kSatPieces : kNaePieces;
    int npieces = (v == Variant::SAT) ? 4 : 9;
    double S = 1.0 + t[0] + t[1] + t[2];
    double u[3] = {t[0] / S, t[1] / S, t[2] / S};
    FParts out;
    out.lnS = std::log1p(t[0] + t[1] + t[2]);
    double kk1 = (double)k * (k - 1);
    for (int pi = 0; pi < npieces; ++pi) {
        const Piece& pc = pieces[pi];
        double ell = pc.d[0] + pc.d[1] * t[0] + pc.d[2] * t[1] + pc.d[3] * t[2];
        double rho = ell / S;
        double rk = std::pow(rho, k);
        if (rk == 0.0) continue;
        double rk1 = rk / rho;
        double rk2 = rk1 / rho;
        out.F += pc.c * rk;
        for (int i = 0; i < 3; ++i) {
            if (!pc.d[i + 1]) continue;
            out.A[i] += k * pc.c * u[i] * rk1;
            for (int j = 0; j < 3; ++j)
                if (pc.d[j + 1]) out.H(i, j) += kk1 * pc.c * u[i] * u[j] * rk2;
        }
    }
    if (!(out.F > 0.0))
        throw inconclusive_error("pair polynomial ratio non-positive (numeric underflow)");
    return out;
}

}  // namespace

AfBf eval_af_Bf(int k, Variant v, const Vec3& t) {
    FParts p = f_parts(k, v, t);
    AfBf out;
    out.ln_f = k * p.lnS + std::log(p.F);
    for (int i = 0; i < 3; ++i) out.a[i] = p.A[i] / p.F;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double h = p.H(i, j) / p.F;
            out.B(i, j) = h - out.a[i] * out.a[j] + (i == j ? out.a[i] : 0.0);
        }
    return out;
}

double ln_f(int k, Variant v, const Vec3& t) {
    FParts p = f_parts(k, v, t);
    return k * p.lnS + std::log(p.F);
}

double entropy(double g) {
    if (g <= 0.0 || g >= 1.0) return 0.0;
    double d = (g > 0.5) ? 1.0 - g : g;
    return -d * std::log(d) - (1.0 - d) * std::log1p(-d);
}

}  // namespace rksat

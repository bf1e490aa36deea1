#include "rksat/second_moment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <utility>

#include "rksat/errors.hpp"

namespace rksat {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::NotDominant: return "not-dominant";
        case Verdict::Dominant: return "dominant";
        default: return "inconclusive";
    }
}

namespace {

constexpr double kMarginTol = 1e-9;
constexpr double kLadderEdge = 1e-4;  // ladders continue where the uniform grid stops
constexpr double kLadderFloor = 1e-12;
constexpr double kLadderRatio = 0.7;
constexpr double kResidualAccept = 1e-10;

void check_k(int k) {
    if (k < 3 || k > 64) throw non_realizable("k must be in [3, 64]");
}

// damped Newton in u = ln t for a_f(e^{u1}, e^{u2}, e^{u1}) = (T1, T2, T1);
// the log-coordinate Jacobian is assembled from B_f entries directly
SaddlePoint3D newton_targets(int k, Variant v, double T1, double T2, double u1, double u2) {
    AfBf e;
    auto eval = [&](double a, double b, AfBf& out) {
        Vec3 t;
        t[0] = std::exp(a);
        t[1] = std::exp(b);
        t[2] = t[0];
        out = eval_af_Bf(k, v, t);
        return std::fmax(std::fabs(out.a[0] - T1), std::fabs(out.a[1] - T2));
    };
    double resn = eval(u1, u2, e);
    double tol = 1e-13 * std::fmax(1.0, std::fmax(T1, T2));
    int used = 0;
    for (int it = 0; it < 80 && resn > tol; ++it) {
        double r1 = e.a[0] - T1, r2 = e.a[1] - T2;
        double J11 = e.B(0, 0) + e.B(0, 2), J12 = e.B(0, 1);
        double J21 = e.B(1, 0) + e.B(1, 2), J22 = e.B(1, 1);
        double det = J11 * J22 - J12 * J21;
        if (det == 0.0 || !std::isfinite(det)) break;
        double d1 = std::clamp((-r1 * J22 + r2 * J12) / det, -2.0, 2.0);
        double d2 = std::clamp((r1 * J21 - r2 * J11) / det, -2.0, 2.0);
        bool accepted = false;
        for (double lam = 1.0; lam > 1e-6; lam *= 0.5) {
            AfBf cand;
            double rn = eval(u1 + lam * d1, u2 + lam * d2, cand);
            ++used;
            if (rn < resn) {
                u1 += lam * d1;
                u2 += lam * d2;
                e = cand;
                resn = rn;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    SaddlePoint3D out;
    out.t[0] = out.t[2] = std::exp(u1);
    out.t[1] = std::exp(u2);
    out.residual = resn;
    out.ln_f = e.ln_f;
    out.iterations = used;
    return out;
}

SaddlePoint3D solve_targets(int k, Variant v, double T1, double T2, const SaddlePoint3D* hint) {
    check_k(k);
    if (!(T1 > 0.0) || !(T2 > 0.0) || !(T1 + T2 < 0.5 * k + 1e-9))
        throw std::invalid_argument("saddle targets out of range");
    if (hint && hint->t[0] > 0.0 && hint->t[1] > 0.0) {
        SaddlePoint3D s =
            newton_targets(k, v, T1, T2, std::log(hint->t[0]), std::log(hint->t[1]));
        if (s.residual <= kResidualAccept) return s;
    }
    // continuation from the diagonal center seed (x, x^2, x), targets (k/4, k/4)
    SaddlePoint1D c = solve_saddle_1d(k, v);
    double u1 = std::log(c.x), u2 = 2.0 * std::log(c.x);
    double S1 = 0.25 * k, S2 = 0.25 * k;
    double dist = std::fmax(std::fabs(T1 - S1), std::fabs(T2 - S2));
    int steps = std::clamp((int)std::ceil(dist / (0.005 * k)), 1, 20000);
    SaddlePoint3D s;
    int total_its = 0;
    for (int j = 1; j <= steps; ++j) {
        double f = (double)j / steps;
        s = newton_targets(k, v, S1 + f * (T1 - S1), S2 + f * (T2 - S2), u1, u2);
        u1 = std::log(s.t[0]);
        u2 = std::log(s.t[1]);
        total_its += s.iterations;
    }
    s.iterations = total_its;
    if (s.residual > kResidualAccept)
        throw inconclusive_error("pair saddle did not converge (k=" + std::to_string(k) +
                                 " variant=" + to_string(v) + " T1=" + std::to_string(T1) +
                                 " T2=" + std::to_string(T2) + ")");
    return s;
}

// gamma = 0 collapses the pair polynomial onto the NAE clause polynomial for
// either variant; gamma = 1 collapses onto the variant's own polynomial
double endpoint_rate(int k, Variant v, double alpha, bool agree_end) {
    Variant pv = agree_end ? v : Variant::NAE;
    SaddlePoint1D sp = solve_saddle_1d(k, pv);
    return M_LN2 - alpha * rate_slope(k, pv, sp.x);
}

template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double tol) {
    const double invphi = 0.6180339887498949;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? std::make_pair(c, fc) : std::make_pair(d, fd);
}

std::vector<double> ladder_deltas(double edge) {
    std::vector<double> out;
    for (double d = edge * kLadderRatio; d >= kLadderFloor; d *= kLadderRatio) out.push_back(d);
    return out;
}

}  // namespace

SaddlePoint3D solve_saddle_theta(int k, Variant v, double theta, const SaddlePoint3D* hint) {
    return solve_targets(k, v, 0.5 * k - theta, theta, hint);
}

SaddlePoint3D solve_overlap_saddle(int k, Variant v, double gamma, const SaddlePoint3D* hint) {
    if (!(gamma > 0.0) || !(gamma < 1.0))
        throw std::invalid_argument("gamma must lie strictly inside (0, 1)");
    return solve_targets(k, v, 0.5 * k * (1.0 - gamma), 0.5 * k * gamma, hint);
}

double s_gamma_at(int k, Variant v, long long r, double gamma, const SaddlePoint3D& sp) {
    double alpha = 2.0 * (double)r / k;
    if (gamma <= 0.0) return endpoint_rate(k, v, alpha, false);
    if (gamma >= 1.0) return endpoint_rate(k, v, alpha, true);
    double lt1 = std::log(sp.t[0]), lt2 = std::log(sp.t[1]);
    return (1.0 - 2.0 * (double)r) * (M_LN2 + entropy(gamma)) + alpha * sp.ln_f -
           (double)r * (1.0 - gamma) * 2.0 * lt1 - (double)r * gamma * lt2;
}

double s_gamma(int k, Variant v, long long r, double gamma) {
    if (r < 1) throw non_realizable("r >= 1 required");
    if (gamma <= 0.0 || gamma >= 1.0) return s_gamma_at(k, v, r, gamma, SaddlePoint3D{});
    SaddlePoint3D sp = solve_overlap_saddle(k, v, gamma);
    return s_gamma_at(k, v, r, gamma, sp);
}

double stationarity_residual(int k, Variant v, long long r, double gamma,
                             const SaddlePoint3D& sp) {
    (void)k;
    (void)v;
    double lt1 = std::log(sp.t[0]), lt2 = std::log(sp.t[1]);
    return (1.0 - 2.0 * (double)r) * std::log((1.0 - gamma) / gamma) +
           (double)r * (2.0 * lt1 - lt2);
}

double g_gamma_2reg_at(const DegreeProfile& prof, Variant v, double g_r, double g_r1,
                       const SaddlePoint3D& sp) {
    int k = prof.k;
    double alpha = prof.alpha;
    double r = (double)prof.r;
    double ka = k * alpha;
    double G = r * prof.lambda_r * g_r + (r + 1.0) * prof.lambda_r1 * g_r1;
    double Gc = r * prof.lambda_r * (1.0 - g_r) + (r + 1.0) * prof.lambda_r1 * (1.0 - g_r1);
    if (G <= 1e-15 * ka) return endpoint_rate(k, v, alpha, false);
    if (Gc <= 1e-15 * ka) return endpoint_rate(k, v, alpha, true);
    double lt1 = std::log(sp.t[0]), lt2 = std::log(sp.t[1]);
    return M_LN2 + prof.lambda_r * entropy(g_r) + prof.lambda_r1 * entropy(g_r1) +
           2.0 * Gc * std::log(Gc) + 2.0 * G * std::log(G) - ka * std::log(ka) +
           alpha * sp.ln_f - 2.0 * Gc * lt1 - G * lt2;
}

double g_gamma_2reg(const DegreeProfile& prof, Variant v, double g_r, double g_r1) {
    double r = (double)prof.r;
    double G = r * prof.lambda_r * g_r + (r + 1.0) * prof.lambda_r1 * g_r1;
    double Gc = r * prof.lambda_r * (1.0 - g_r) + (r + 1.0) * prof.lambda_r1 * (1.0 - g_r1);
    double ka = prof.k * prof.alpha;
    if (G <= 1e-15 * ka || Gc <= 1e-15 * ka)
        return g_gamma_2reg_at(prof, v, g_r, g_r1, SaddlePoint3D{});
    SaddlePoint3D sp = solve_targets(prof.k, v, Gc / prof.alpha, G / prof.alpha, nullptr);
    return g_gamma_2reg_at(prof, v, g_r, g_r1, sp);
}

OverlapScan dominance_scan_strict(int k, Variant v, long long r, double step) {
    check_k(k);
    if (r < 1) throw non_realizable("r >= 1 required");
    if (!(step > 1e-6) || !(step < 0.25)) throw std::invalid_argument("bad scan step");
    OverlapScan sc;
    sc.k = k;
    sc.variant = v;
    sc.two_regular = false;
    sc.r = r;
    sc.alpha = 2.0 * (double)r / k;

    std::vector<double> right, left;  // gammas above / below 1/2
    for (int j = 1; 0.5 + j * step <= 1.0 - kLadderEdge + 1e-12; ++j) {
        right.push_back(0.5 + j * step);
        left.push_back(0.5 - j * step);
    }
    if (right.empty() || right.back() < 1.0 - kLadderEdge - 1e-12) {
        right.push_back(1.0 - kLadderEdge);
        left.push_back(kLadderEdge);
    }
    for (double d : ladder_deltas(kLadderEdge)) {
        right.push_back(1.0 - d);
        left.push_back(d);
    }

    struct Node {
        double g;
        double s = 0;
        SaddlePoint3D sp;
    };
    std::vector<Node> nodes;
    nodes.reserve(2 * right.size() + 3);
    SaddlePoint3D center = solve_overlap_saddle(k, v, 0.5);
    nodes.push_back({0.5, 0, center});
    SaddlePoint3D prev = center;
    for (double g : right) {
        SaddlePoint3D sp = solve_overlap_saddle(k, v, g, &prev);
        prev = sp;
        nodes.push_back({g, 0, sp});
    }
    prev = center;
    for (double g : left) {
        SaddlePoint3D sp = solve_overlap_saddle(k, v, g, &prev);
        prev = sp;
        nodes.push_back({g, 0, sp});
    }
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.g < b.g; });
    for (Node& nd : nodes) nd.s = s_gamma_at(k, v, r, nd.g, nd.sp);

    sc.endpoint_low = s_gamma_at(k, v, r, 0.0, SaddlePoint3D{});
    sc.endpoint_high = s_gamma_at(k, v, r, 1.0, SaddlePoint3D{});

    size_t ic = 0;
    for (size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].g == 0.5) ic = i;
    sc.center_value = nodes[ic].s;

    auto excluded = [&](double g) { return std::fabs(g - 0.5) <= 2.0 * step + 1e-12; };

    double maxoff = sc.endpoint_low;
    double am1 = 0.0;
    if (sc.endpoint_high > maxoff) {
        maxoff = sc.endpoint_high;
        am1 = 1.0;
    }
    for (const Node& nd : nodes) {
        if (excluded(nd.g)) continue;
        if (nd.s > maxoff) {
            maxoff = nd.s;
            am1 = nd.g;
        }
    }
    // golden refinement around interior local maxima
    for (size_t i = 0; i < nodes.size(); ++i) {
        double sm = (i == 0) ? sc.endpoint_low : nodes[i - 1].s;
        double sp1 = (i + 1 == nodes.size()) ? sc.endpoint_high : nodes[i + 1].s;
        if (!(nodes[i].s >= sm && nodes[i].s >= sp1)) continue;
        if (excluded(nodes[i].g)) continue;
        double a = (i == 0) ? 0.3 * kLadderFloor : nodes[i - 1].g;
        double b = (i + 1 == nodes.size()) ? 1.0 - 0.3 * kLadderFloor : nodes[i + 1].g;
        SaddlePoint3D cursor = nodes[i].sp;
        auto f = [&](double g) {
            cursor = solve_overlap_saddle(k, v, g, &cursor);
            return s_gamma_at(k, v, r, g, cursor);
        };
        auto [gm, vm] = golden_max(f, a, b, 1e-6);
        if (!excluded(gm) && vm > maxoff) {
            maxoff = vm;
            am1 = gm;
        }
    }
    sc.max_off_center = maxoff;
    sc.arg_max1 = sc.arg_max2 = am1;
    sc.margin = sc.center_value - maxoff;

    // five-point second derivative from the uniform part of the grid
    double h = step;
    double sm2 = nodes[ic - 2].s, sm1 = nodes[ic - 1].s, sp1 = nodes[ic + 1].s,
           sp2 = nodes[ic + 2].s;
    sc.curvature =
        (-sm2 + 16.0 * sm1 - 30.0 * sc.center_value + 16.0 * sp1 - sp2) / (12.0 * h * h);

    if (sc.margin > kMarginTol && sc.curvature < 0.0)
        sc.verdict = Verdict::Dominant;
    else if (sc.margin < -kMarginTol)
        sc.verdict = Verdict::NotDominant;
    else
        sc.verdict = Verdict::Inconclusive;

    sc.samples.reserve(nodes.size() + 2);
    sc.samples.push_back({0.0, 0.0, 0.0, 0.0, sc.endpoint_low, 0.0});
    for (const Node& nd : nodes)
        sc.samples.push_back({nd.g, nd.g, nd.sp.t[0], nd.sp.t[1], nd.s, nd.sp.residual});
    sc.samples.push_back({1.0, 1.0, 0.0, 0.0, sc.endpoint_high, 0.0});
    return sc;
}

OverlapScan dominance_scan_2reg(const DegreeProfile& prof, Variant v, int grid) {
    check_k(prof.k);
    if (prof.strictly_regular)
        throw non_realizable("profile is strictly regular; use the strict scan");
    if (prof.r < 1) throw non_realizable("r >= 1 required");
    if (grid < 8) grid = 8;
    if (grid % 2) ++grid;
    int N = grid;
    int k = prof.k;
    double alpha = prof.alpha;
    double r = (double)prof.r;

    OverlapScan sc;
    sc.k = k;
    sc.variant = v;
    sc.two_regular = true;
    sc.r = prof.r;
    sc.alpha = alpha;
    sc.endpoint_low = endpoint_rate(k, v, alpha, false);
    sc.endpoint_high = endpoint_rate(k, v, alpha, true);

    size_t W = (size_t)N + 1;
    std::vector<double> S(W * W, 0.0);
    std::vector<SaddlePoint3D> sps(W * W);
    auto idx = [&](int i, int j) { return (size_t)i * W + (size_t)j; };

    SaddlePoint3D prev;
    bool have_prev = false;
    for (int i = 0; i <= N; ++i) {
        double g1 = (double)i / N;
        for (int jj = 0; jj <= N; ++jj) {
            int j = (i % 2 == 0) ? jj : N - jj;  // serpentine for warm starts
            double g2 = (double)j / N;
            double G = r * prof.lambda_r * g1 + (r + 1.0) * prof.lambda_r1 * g2;
            double Gc = r * prof.lambda_r * (1.0 - g1) + (r + 1.0) * prof.lambda_r1 * (1.0 - g2);
            if (G <= 0.0) {
                S[idx(i, j)] = sc.endpoint_low;
                continue;
            }
            if (Gc <= 0.0) {
                S[idx(i, j)] = sc.endpoint_high;
                continue;
            }
            SaddlePoint3D sp =
                solve_targets(k, v, Gc / alpha, G / alpha, have_prev ? &prev : nullptr);
            prev = sp;
            have_prev = true;
            sps[idx(i, j)] = sp;
            S[idx(i, j)] = g_gamma_2reg_at(prof, v, g1, g2, sp);
        }
    }

    int icen = N / 2;
    sc.center_value = S[idx(icen, icen)];

    auto excluded = [&](int i, int j) {
        return std::max(std::abs(i - icen), std::abs(j - icen)) <= 2;
    };

    double maxoff = -std::numeric_limits<double>::infinity();
    double am1 = 0, am2 = 0;
    auto consider = [&](double g1, double g2, double val) {
        if (val > maxoff) {
            maxoff = val;
            am1 = g1;
            am2 = g2;
        }
    };
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j)
            if (!excluded(i, j)) consider((double)i / N, (double)j / N, S[idx(i, j)]);

    // coordinate-wise golden refinement of grid-local maxima
    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j <= N; ++j) {
            if (excluded(i, j)) continue;
            double val = S[idx(i, j)];
            bool ismax = true;
            for (int di = -1; di <= 1 && ismax; ++di)
                for (int dj = -1; dj <= 1 && ismax; ++dj) {
                    if (!di && !dj) continue;
                    int ii = i + di, jj = j + dj;
                    if (ii < 0 || ii > N || jj < 0 || jj > N) continue;
                    if (S[idx(ii, jj)] > val) ismax = false;
                }
            if (!ismax) continue;
            double c1 = (double)i / N, c2 = (double)j / N;
            SaddlePoint3D cursor = sps[idx(i, j)];
            if (cursor.t[0] <= 0.0) cursor = SaddlePoint3D{};
            auto value_at = [&](double g1, double g2) {
                double G = r * prof.lambda_r * g1 + (r + 1.0) * prof.lambda_r1 * g2;
                double Gc =
                    r * prof.lambda_r * (1.0 - g1) + (r + 1.0) * prof.lambda_r1 * (1.0 - g2);
                if (G <= 0.0) return sc.endpoint_low;
                if (Gc <= 0.0) return sc.endpoint_high;
                cursor = solve_targets(k, v, Gc / alpha, G / alpha,
                                       cursor.t[0] > 0 ? &cursor : nullptr);
                return g_gamma_2reg_at(prof, v, g1, g2, cursor);
            };
            double best = val;
            for (int round = 0; round < 3; ++round) {
                auto [m1, v1] = golden_max([&](double g) { return value_at(g, c2); },
                                           std::max(0.0, c1 - 1.0 / N),
                                           std::min(1.0, c1 + 1.0 / N), 1e-6);
                c1 = m1;
                auto [m2, v2] = golden_max([&](double g) { return value_at(c1, g); },
                                           std::max(0.0, c2 - 1.0 / N),
                                           std::min(1.0, c2 + 1.0 / N), 1e-6);
                c2 = m2;
                best = std::fmax(v1, v2);
            }
            consider(c1, c2, best);
        }
    }

    // diagonal ladders into both corners (log-parametrized golden on top)
    for (int corner = 0; corner < 2; ++corner) {
        SaddlePoint3D cursor = sps[idx(corner ? N - 1 : 1, corner ? N - 1 : 1)];
        auto diag_val = [&](double c) {
            double g = corner ? 1.0 - c : c;
            double G = r * prof.lambda_r * g + (r + 1.0) * prof.lambda_r1 * g;
            double Gc =
                r * prof.lambda_r * (1.0 - g) + (r + 1.0) * prof.lambda_r1 * (1.0 - g);
            if (G <= 0.0) return sc.endpoint_low;
            if (Gc <= 0.0) return sc.endpoint_high;
            cursor = solve_targets(k, v, Gc / alpha, G / alpha,
                                   cursor.t[0] > 0 ? &cursor : nullptr);
            return g_gamma_2reg_at(prof, v, g, g, cursor);
        };
        for (double d : ladder_deltas(0.5 / N)) {
            double g = corner ? 1.0 - d : d;
            consider(g, g, diag_val(d));
        }
        auto [lm, lv] =
            golden_max([&](double x) { return diag_val(std::exp(x)); },
                       std::log(0.3 * kLadderFloor), std::log(2.0 / N), 1e-3);
        double g = corner ? 1.0 - std::exp(lm) : std::exp(lm);
        consider(g, g, lv);
    }

    consider(0.0, 0.0, sc.endpoint_low);
    consider(1.0, 1.0, sc.endpoint_high);

    sc.max_off_center = maxoff;
    sc.arg_max1 = am1;
    sc.arg_max2 = am2;
    sc.margin = sc.center_value - maxoff;

    double h = 1.0 / N;
    double h11 = (S[idx(icen + 1, icen)] - 2.0 * sc.center_value + S[idx(icen - 1, icen)]) /
                 (h * h);
    double h22 = (S[idx(icen, icen + 1)] - 2.0 * sc.center_value + S[idx(icen, icen - 1)]) /
                 (h * h);
    double h12 = (S[idx(icen + 1, icen + 1)] - S[idx(icen + 1, icen - 1)] -
                  S[idx(icen - 1, icen + 1)] + S[idx(icen - 1, icen - 1)]) /
                 (4.0 * h * h);
    sc.curvature = 0.5 * (h11 + h22 + std::sqrt((h11 - h22) * (h11 - h22) + 4.0 * h12 * h12));

    if (sc.margin > kMarginTol && sc.curvature < 0.0)
        sc.verdict = Verdict::Dominant;
    else if (sc.margin < -kMarginTol)
        sc.verdict = Verdict::NotDominant;
    else
        sc.verdict = Verdict::Inconclusive;

    sc.samples.reserve(W * W);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) {
            const SaddlePoint3D& sp = sps[idx(i, j)];
            sc.samples.push_back({(double)i / N, (double)j / N, sp.t[0], sp.t[1], S[idx(i, j)],
                                  sp.residual});
        }
    return sc;
}

void write_scan_csv(const OverlapScan& sc, std::ostream& os) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "# k=%d variant=%s mode=%s r=%lld alpha=%.10g\n", sc.k,
                  to_string(sc.variant), sc.two_regular ? "2-regular" : "strict", sc.r, sc.alpha);
    os << buf;
    os << (sc.two_regular ? "gamma_r,gamma_r1,t1,t2,s,residual\n" : "gamma,t1,t2,s,residual\n");
    for (const ScanPoint& p : sc.samples) {
        if (sc.two_regular)
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.3g\n", p.g1, p.g2,
                          p.t1, p.t2, p.s, p.residual);
        else
            std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.3g\n", p.g1, p.t1, p.t2,
                          p.s, p.residual);
        os << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "# center=%.12g max_off_center=%.12g at=(%.6g,%.6g) margin=%.6g "
                  "curvature=%.6g verdict=%s\n",
                  sc.center_value, sc.max_off_center, sc.arg_max1, sc.arg_max2, sc.margin,
                  sc.curvature, to_string(sc.verdict));
    os << buf;
}

SigmaS sigma_s_sq(int k, Variant v, long long r) {
    check_k(k);
    if (r < 1) throw non_realizable("r >= 1 required");
    SaddlePoint1D c = solve_saddle_1d(k, v);
    Vec3 t;
    t[0] = c.x;
    t[1] = c.x * c.x;
    t[2] = c.x;
    AfBf e = eval_af_Bf(k, v, t);
    Vec3 y;
    y[0] = -1.0;
    y[1] = 1.0;
    y[2] = -1.0;
    SigmaS out;
    out.c_f = quad_form_inv(e.B, y);
    double inv = 4.0 + 0.5 * k * (double)r * out.c_f - 8.0 * (double)r;
    if (!(inv > 0.0))
        throw inconclusive_error("overlap variance not positive at r=" + std::to_string(r));
    out.value = 1.0 / inv;
    return out;
}

ProbBound prob_lower_bound_strict(int k, Variant v, long long r) {
    SigmaS sg = sigma_s_sq(k, v, r);
    SaddlePoint1D c = solve_saddle_1d(k, v);
    Vec3 t;
    t[0] = c.x;
    t[1] = c.x * c.x;
    t[2] = c.x;
    AfBf e = eval_af_Bf(k, v, t);
    double det = det3(e.B);
    if (!(det > 0.0)) throw inconclusive_error("pair Hessian not positive definite");
    ProbBound pb;
    pb.raw = 2.0 * std::sqrt(det) / (std::sqrt(sg.value) * c.ab.b * std::sqrt((double)k));
    pb.value = std::clamp(pb.raw, 0.0, 1.0);
    return pb;
}

RStarReport find_r_star(int k, Variant v, bool assume_monotone, double step) {
    check_k(k);
    RStarReport rep;
    double au = upper_bound_alpha(k, v);
    long long r_hi = (long long)std::ceil(0.5 * k * au) + 1;
    auto scan = [&](long long r) {
        ++rep.scans;
        return dominance_scan_strict(k, v, r, step);
    };
    auto bad = [&](long long r, const OverlapScan& s) {
        return inconclusive_error("inconclusive dominance at r=" + std::to_string(r) +
                                  " (margin=" + std::to_string(s.margin) + ")");
    };
    if (!assume_monotone) {
        OverlapScan prevs = scan(1);
        if (prevs.verdict == Verdict::Inconclusive) throw bad(1, prevs);
        if (!prevs.dominant())
            throw inconclusive_error("dominance already fails at r=1 for k=" + std::to_string(k));
        for (long long rr = 2;; ++rr) {
            if (rr > r_hi + 1)
                throw inconclusive_error("dominance never failed up to the zero-rate degree");
            OverlapScan cur = scan(rr);
            if (cur.dominant()) {
                prevs = cur;
                continue;
            }
            if (cur.verdict == Verdict::Inconclusive) throw bad(rr, cur);
            rep.r_star = rr - 1;
            rep.margin_at_r_star = prevs.margin;
            rep.margin_at_next = cur.margin;
            break;
        }
    } else {
        long long lo = 1;
        OverlapScan slo = scan(lo);
        if (!slo.dominant())
            throw inconclusive_error("dominance fails at r=1 for k=" + std::to_string(k));
        long long hi = r_hi;
        OverlapScan shi = scan(hi);
        while (shi.dominant()) {
            lo = hi;
            slo = shi;
            hi *= 2;
            if (hi > (1LL << 40)) throw inconclusive_error("dominance failure not bracketed");
            shi = scan(hi);
        }
        if (shi.verdict == Verdict::Inconclusive) throw bad(hi, shi);
        while (hi - lo > 1) {
            long long mid = lo + (hi - lo) / 2;
            OverlapScan sm = scan(mid);
            if (sm.dominant()) {
                lo = mid;
                slo = sm;
            } else if (sm.verdict == Verdict::NotDominant) {
                hi = mid;
                shi = sm;
            } else {
                throw bad(mid, sm);
            }
        }
        rep.r_star = lo;
        rep.margin_at_r_star = slo.margin;
        rep.margin_at_next = shi.margin;
    }
    rep.alpha_l = 2.0 * (double)rep.r_star / k;
    return rep;
}

Sigma2Report sigma_matrix_2reg(const DegreeProfile& prof, Variant v) {
    check_k(prof.k);
    if (prof.strictly_regular || prof.lambda_r1 <= 0.0 || prof.lambda_r <= 0.0)
        throw non_realizable("2-regular covariance needs both degree classes populated");
    int k = prof.k;
    double alpha = prof.alpha;
    double r = (double)prof.r;
    SaddlePoint1D c = solve_saddle_1d(k, v);
    Vec3 t;
    t[0] = c.x;
    t[1] = c.x * c.x;
    t[2] = c.x;
    AfBf e = eval_af_Bf(k, v, t);
    Vec3 y;
    y[0] = -1.0;
    y[1] = 1.0;
    y[2] = -1.0;
    Sigma2Report out;
    out.c_f = quad_form_inv(e.B, y);
    double D = out.c_f / (2.0 * alpha) - 8.0 / (k * alpha);
    out.m11 = 4.0 / prof.lambda_r + 2.0 * r * r * D;
    out.m22 = 4.0 / prof.lambda_r1 + 2.0 * (r + 1.0) * (r + 1.0) * D;
    out.m12 = 2.0 * r * (r + 1.0) * D;
    double detm = out.m11 * out.m22 - out.m12 * out.m12;
    if (!(detm > 0.0) || !(out.m11 > 0.0))
        throw inconclusive_error("class-overlap covariance not positive definite");
    out.s11 = out.m22 / detm;
    out.s22 = out.m11 / detm;
    out.s12 = -out.m12 / detm;
    out.det_sigma = 1.0 / detm;
    double det = det3(e.B);
    if (!(det > 0.0)) throw inconclusive_error("pair Hessian not positive definite");
    out.prob.raw = std::sqrt(det * prof.lambda_r * prof.lambda_r1) /
                   (c.ab.b * std::sqrt((double)k * out.det_sigma));
    out.prob.value = std::clamp(out.prob.raw, 0.0, 1.0);
    return out;
}

double lower_bound_alpha_2reg(int k, Variant v, double alpha_tolerance, int grid,
                              bool assume_monotone) {
    check_k(k);
    if (!(alpha_tolerance > 0.0)) throw std::invalid_argument("alpha tolerance must be positive");
    RStarReport rs = find_r_star(k, v, assume_monotone);
    double lo = rs.alpha_l;
    double hi = upper_bound_alpha(k, v) * (1.0 + 1e-5);
    auto verdict_at = [&](double a) {
        DegreeProfile p = make_profile(k, a);
        if (p.strictly_regular) return dominance_scan_strict(k, v, p.r).verdict;
        return dominance_scan_2reg(p, v, grid).verdict;
    };
    if (verdict_at(hi) == Verdict::Dominant)
        throw inconclusive_error("dominance still holds above the first-moment bound");
    while (hi - lo > alpha_tolerance) {
        double mid = 0.5 * (lo + hi);
        if (verdict_at(mid) == Verdict::Dominant)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace rksat

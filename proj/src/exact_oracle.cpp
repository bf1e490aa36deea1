#include "rksat/exact_oracle.hpp"

#include <algorithm>
#include <unordered_map>

#include "rksat/errors.hpp"
#include "rksat/formula_gen.hpp"

namespace rksat {

namespace {

constexpr long long kFirstMomentEdgeGuard = 2000;
constexpr long long kSecondMomentEdgeGuard = 60;
constexpr long long kEnumEdgeGuard = 10;

std::uint64_t pack3(long long a, long long b, long long c) {
    return ((std::uint64_t)a << 42) | ((std::uint64_t)b << 21) | (std::uint64_t)c;
}

using TriMap = std::unordered_map<std::uint64_t, BigInt>;

TriMap pair_power_map(int k, Variant v, long long power, long long cap1, long long cap2,
                      long long cap3) {
    std::vector<TriCoef> f = pair_poly_monomials(k, v);
    TriMap acc;
    acc[pack3(0, 0, 0)] = 1;
    for (long long step = 0; step < power; ++step) {
        TriMap next;
        next.reserve(acc.size() * 4);
        for (const auto& [key, coef] : acc) {
            long long a1 = (long long)(key >> 42);
            long long a2 = (long long)((key >> 21) & 0x1FFFFF);
            long long a3 = (long long)(key & 0x1FFFFF);
            for (const TriCoef& mono : f) {
                long long b1 = a1 + mono.e1, b2 = a2 + mono.e2, b3 = a3 + mono.e3;
                if (b1 > cap1 || b2 > cap2 || b3 > cap3) continue;
                next[pack3(b1, b2, b3)] += coef * mono.c;
            }
        }
        acc = std::move(next);
    }
    for (auto it = acc.begin(); it != acc.end();)
        it = (it->second == 0) ? acc.erase(it) : std::next(it);
    return acc;
}

}  // namespace

BigInt factorial_big(long long n) {
    if (n < 0) throw std::invalid_argument("factorial of a negative number");
    BigInt f = 1;
    for (long long i = 2; i <= n; ++i) f *= i;
    return f;
}

BigInt binomial_big(long long n, long long r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    BigInt num = 1;
    for (long long i = 0; i < r; ++i) num *= (n - i);
    return num / factorial_big(r);
}

BigInt power_coef_uni(int k, Variant v, long long power, long long target) {
    if (power < 0) throw std::invalid_argument("negative power");
    if (target < 0 || target > (long long)k * power) return 0;
    if (target < power) return 0;  // every clause factor has minimum degree 1
    std::vector<BigInt> base((size_t)k + 1, 0);
    for (int j = 1; j <= k; ++j) base[(size_t)j] = binomial_big(k, j);
    if (v == Variant::NAE) base[(size_t)k] = 0;
    std::vector<BigInt> acc{1};
    for (long long step = 0; step < power; ++step) {
        size_t cap = (size_t)std::min<long long>(target, (long long)(acc.size() - 1) + k);
        std::vector<BigInt> next(cap + 1, 0);
        for (size_t i = 0; i < acc.size(); ++i) {
            if (acc[i] == 0) continue;
            for (int j = 1; j <= k && i + (size_t)j <= cap; ++j)
                if (base[(size_t)j] != 0) next[i + (size_t)j] += acc[i] * base[(size_t)j];
        }
        acc = std::move(next);
    }
    return target < (long long)acc.size() ? acc[(size_t)target] : BigInt(0);
}

std::vector<TriCoef> pair_poly_monomials(int k, Variant v) {
    std::vector<TriCoef> out;
    for (long long a = 0; a <= k; ++a)
        for (long long b = 0; a + b <= k; ++b)
            for (long long c = 0; a + b + c <= k; ++c) {
                // multinomial from (1+t1+t2+t3)^k
                BigInt coef = factorial_big(k) / (factorial_big(a) * factorial_big(b) *
                                                  factorial_big(c) * factorial_big(k - a - b - c));
                if (b == 0 && c == 0) coef -= binomial_big(k, a);  // -(1+t1)^k
                if (a == 0 && b == 0) coef -= binomial_big(k, c);  // -(1+t3)^k
                if (a == 0 && b == 0 && c == 0) coef += 1;
                if (v == Variant::NAE) {
                    if (c == 0 && a + b == k) coef -= binomial_big(k, a);  // -(t1+t2)^k
                    if (a == k) coef += 1;                                 // +t1^k
                    if (a == 0 && b + c == k) coef -= binomial_big(k, b);  // -(t2+t3)^k
                    if (b == k) coef += 1;                                 // +t2^k
                    if (c == k) coef += 1;                                 // +t3^k
                }
                if (coef != 0) out.push_back({a, b, c, coef});
            }
    return out;
}

std::vector<TriCoef> pair_power_monomials(int k, Variant v, long long power, long long cap1,
                                          long long cap2, long long cap3) {
    TriMap m = pair_power_map(k, v, power, cap1, cap2, cap3);
    std::vector<TriCoef> out;
    out.reserve(m.size());
    for (const auto& [key, coef] : m)
        out.push_back({(long long)(key >> 42), (long long)((key >> 21) & 0x1FFFFF),
                       (long long)(key & 0x1FFFFF), coef});
    std::sort(out.begin(), out.end(), [](const TriCoef& x, const TriCoef& y) {
        return std::tie(x.e1, x.e2, x.e3) < std::tie(y.e1, y.e2, y.e3);
    });
    return out;
}

BigRat exact_first_moment(const FiniteInstanceShape& shape, Variant v) {
    if (shape.edges > kFirstMomentEdgeGuard)
        throw too_large("exact first moment guarded at edges <= 2000");
    long long half = shape.edges / 2;
    BigInt coef = power_coef_uni(shape.profile.k, v, shape.m, half);
    BigInt hf = factorial_big(half);
    BigInt num = (BigInt(1) << shape.n) * hf * hf * coef;
    return BigRat(num, factorial_big(shape.edges));
}

BigRat exact_second_moment_strict(const FiniteInstanceShape& shape, Variant v) {
    if (shape.edges > kSecondMomentEdgeGuard)
        throw too_large("exact second moment guarded at edges <= 60");
    if (shape.n_r1 != 0)
        throw non_realizable("strict second moment needs a strictly regular shape");
    long long r = shape.profile.r, n = shape.n, half = shape.edges / 2;
    TriMap P = pair_power_map(shape.profile.k, v, shape.m, half, half, half);
    BigInt sum = 0;
    for (long long i = 0; i <= n; ++i) {
        long long e1 = r * (n - i), e2 = r * i;
        auto it = P.find(pack3(e1, e2, e1));
        if (it == P.end() || it->second == 0) continue;
        BigInt f1 = factorial_big(e1), f2 = factorial_big(e2);
        sum += binomial_big(n, i) * f1 * f1 * f2 * f2 * it->second;
    }
    return BigRat((BigInt(1) << n) * sum, factorial_big(shape.edges));
}

BigRat exact_second_moment_2reg(const FiniteInstanceShape& shape, Variant v) {
    if (shape.edges > kSecondMomentEdgeGuard)
        throw too_large("exact second moment guarded at edges <= 60");
    long long r = shape.profile.r, half = shape.edges / 2;
    TriMap P = pair_power_map(shape.profile.k, v, shape.m, half, half, half);
    BigInt sum = 0;
    for (long long ir = 0; ir <= shape.n_r; ++ir) {
        for (long long ir1 = 0; ir1 <= shape.n_r1; ++ir1) {
            long long w = r * ir + (r + 1) * ir1;  // agreeing slots per side
            long long e1 = half - w;
            if (e1 < 0) continue;
            auto it = P.find(pack3(e1, w, e1));
            if (it == P.end() || it->second == 0) continue;
            BigInt f1 = factorial_big(e1), f2 = factorial_big(w);
            sum += binomial_big(shape.n_r, ir) * binomial_big(shape.n_r1, ir1) * f1 * f1 * f2 *
                   f2 * it->second;
        }
    }
    return BigRat((BigInt(1) << shape.n) * sum, factorial_big(shape.edges));
}

TinyEnumeration enumerate_tiny(const FiniteInstanceShape& shape, Variant v) {
    if (shape.edges > kEnumEdgeGuard) throw too_large("enumeration guarded at edges <= 10");
    if (shape.n > 25) throw too_large("enumeration guarded at n <= 25");
    long long n = shape.n;
    std::vector<int> deg((size_t)n);
    for (long long var = 0; var < n; ++var)
        deg[(size_t)var] = (int)(var < shape.n_r ? shape.profile.r : shape.profile.r + 1);

    // active variables (positive degree) index the assignment mask bits
    std::vector<int> active((size_t)n, -1);
    int nact = 0;
    for (long long var = 0; var < n; ++var)
        if (deg[(size_t)var] > 0) active[(size_t)var] = nact++;
    int shift_free = (int)(n - nact);
    std::uint32_t nassign = (std::uint32_t)1 << nact;

    // truth table of each literal over all active assignments, as a bitmask
    auto lit_mask = [&](int lit) {
        int av = active[(size_t)(std::abs(lit) - 1)];
        std::uint64_t mask = 0;
        for (std::uint32_t a = 0; a < nassign; ++a)
            if ((((a >> av) & 1u) != 0) == (lit > 0)) mask |= (std::uint64_t)1 << a;
        return mask;
    };

    std::vector<int> arr;  // canonical multiset arrangement of literal slots
    for (long long var = 0; var < n; ++var) {
        for (int c = 0; c < deg[(size_t)var]; ++c) arr.push_back((int)(var + 1));
        for (int c = 0; c < deg[(size_t)var]; ++c) arr.push_back(-(int)(var + 1));
    }
    std::sort(arr.begin(), arr.end());
    std::unordered_map<int, std::uint64_t> masks;
    for (int lit : arr) masks.emplace(lit, lit_mask(lit));

    // each distinct arrangement stands for prod deg(lit)! slot permutations
    BigInt mult = 1;
    for (long long var = 0; var < n; ++var) {
        BigInt d = factorial_big(deg[(size_t)var]);
        mult *= d * d;
    }

    std::uint64_t full = (nassign == 64) ? ~0ull : (((std::uint64_t)1 << nassign) - 1);
    int k = shape.profile.k;
    unsigned __int128 sum1 = 0, sum2 = 0;
    std::uint64_t sat0 = 0;
    std::uint64_t arrangements = 0;
    do {
        ++arrangements;
        std::uint64_t formula = full;
        for (long long c = 0; c < shape.m && formula; ++c) {
            std::uint64_t orm = 0, andm = full;
            for (int s = 0; s < k; ++s) {
                std::uint64_t lm = masks[arr[(size_t)(c * k + s)]];
                orm |= lm;
                andm &= lm;
            }
            formula &= (v == Variant::SAT) ? orm : (orm & ~andm);
        }
        std::uint64_t neff = (std::uint64_t)std::popcount(formula);
        std::uint64_t cnt = neff << shift_free;
        sum1 += cnt;
        sum2 += (unsigned __int128)cnt * cnt;
        sat0 += formula & 1u;
    } while (std::next_permutation(arr.begin(), arr.end()));

    auto big128 = [](unsigned __int128 x) -> BigInt {
        BigInt hi = (std::uint64_t)(x >> 64);
        return (hi << 64) + (std::uint64_t)(x & ~(std::uint64_t)0);
    };
    TinyEnumeration out;
    out.total = factorial_big(shape.edges);
    out.sat_formula_count = BigInt(sat0) * mult;
    out.moment1 = BigRat(big128(sum1) * mult, out.total);
    out.moment2 = BigRat(big128(sum2) * mult, out.total);
    // sanity: multiplicities cover every slot permutation exactly once
    if (BigInt(arrangements) * mult != out.total)
        throw inconclusive_error("enumeration multiplicity mismatch");
    return out;
}

MonteCarloMoments monte_carlo_moments(const FiniteInstanceShape& shape, Variant v,
                                      long long samples, std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("need at least 2 samples");
    long double s1 = 0, s2 = 0, s4 = 0;
    for (long long i = 0; i < samples; ++i) {
        FormulaInstance inst = generate(shape, derive_seed(seed, (std::uint64_t)i));
        long double c = (long double)count_assignments(inst, v);
        s1 += c;
        s2 += c * c;
        s4 += c * c * c * c;
    }
    MonteCarloMoments out;
    out.samples = samples;
    out.seed = seed;
    out.mean1 = (double)(s1 / samples);
    out.mean2 = (double)(s2 / samples);
    long double var1 = s2 / samples - (s1 / samples) * (s1 / samples);
    long double var2 = s4 / samples - (s2 / samples) * (s2 / samples);
    out.stderr1 = (double)std::sqrt(std::max((long double)0, var1) / samples);
    out.stderr2 = (double)std::sqrt(std::max((long double)0, var2) / samples);
    return out;
}

std::vector<FiniteInstanceShape> tiny_shape_suite(long long max_edges, long long max_n) {
    std::vector<FiniteInstanceShape> out;
    for (int k = 3; k <= max_edges; ++k)
        for (long long m = 1; (long long)k * m <= max_edges; ++m) {
            if (((long long)k * m) % 2 != 0) continue;
            for (long long n = 1; n <= max_n; ++n) {
                try {
                    out.push_back(shape_from_counts(k, n, m));
                } catch (const non_realizable&) {
                }
            }
        }
    return out;
}

}  // namespace rksat

#include "rksat/formula_gen.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "rksat/errors.hpp"

namespace rksat {

namespace {

// uniform in [0, n) without modulo bias
std::uint64_t bounded(std::mt19937_64& g, std::uint64_t n) {
    std::uint64_t t = (-n) % n;  // 2^64 mod n
    std::uint64_t x;
    do {
        x = g();
    } while (x < t);
    return x % n;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

FormulaInstance generate(const FiniteInstanceShape& shape, std::uint64_t seed) {
    FormulaInstance inst;
    inst.k = shape.profile.k;
    inst.n = shape.n;
    inst.m = shape.m;
    inst.seed = seed;
    inst.degrees.resize((size_t)shape.n);
    for (long long v = 0; v < shape.n; ++v)
        inst.degrees[(size_t)v] = (int)(v < shape.n_r ? shape.profile.r : shape.profile.r + 1);

    long long E = shape.edges;
    std::vector<int> lits;
    lits.reserve((size_t)E);
    for (long long v = 0; v < shape.n; ++v) {
        for (int c = 0; c < inst.degrees[(size_t)v]; ++c) lits.push_back((int)(v + 1));
        for (int c = 0; c < inst.degrees[(size_t)v]; ++c) lits.push_back(-(int)(v + 1));
    }

    std::vector<long long> perm((size_t)E);
    for (long long i = 0; i < E; ++i) perm[(size_t)i] = i;
    std::mt19937_64 rng(seed);
    for (long long i = E - 1; i > 0; --i) {
        long long j = (long long)bounded(rng, (std::uint64_t)i + 1);
        std::swap(perm[(size_t)i], perm[(size_t)j]);
    }

    inst.clauses.assign((size_t)E, 0);
    for (long long i = 0; i < E; ++i) inst.clauses[(size_t)perm[(size_t)i]] = lits[(size_t)i];
    inst.simple = is_simple(inst);
    return inst;
}

bool is_simple(const FormulaInstance& inst) {
    std::vector<int> vars((size_t)inst.k);
    for (long long c = 0; c < inst.m; ++c) {
        for (int s = 0; s < inst.k; ++s) vars[(size_t)s] = std::abs(inst.lit(c, s));
        std::sort(vars.begin(), vars.end());
        for (int s = 1; s < inst.k; ++s)
            if (vars[(size_t)s] == vars[(size_t)s - 1]) return false;
    }
    return true;
}

std::uint64_t count_assignments(const FormulaInstance& inst, Variant v) {
    if (inst.n > 25) throw too_large("exhaustive counting is limited to n <= 25");
    size_t m = (size_t)inst.m;
    std::vector<std::uint32_t> pos(m, 0), neg(m, 0);
    for (size_t c = 0; c < m; ++c)
        for (int s = 0; s < inst.k; ++s) {
            int lit = inst.lit((long long)c, s);
            if (lit > 0)
                pos[c] |= 1u << (lit - 1);
            else
                neg[c] |= 1u << (-lit - 1);
        }
    std::uint64_t count = 0;
    std::uint32_t top = (std::uint32_t)1 << inst.n;
    for (std::uint32_t a = 0; a < top; ++a) {
        std::uint32_t na = ~a;
        bool ok = true;
        if (v == Variant::SAT) {
            for (size_t c = 0; c < m; ++c)
                if (((a & pos[c]) | (na & neg[c])) == 0) {
                    ok = false;
                    break;
                }
        } else {
            for (size_t c = 0; c < m; ++c) {
                bool has_true = ((a & pos[c]) | (na & neg[c])) != 0;
                bool has_false = ((na & pos[c]) | (a & neg[c])) != 0;
                if (!has_true || !has_false) {
                    ok = false;
                    break;
                }
            }
        }
        count += ok;
    }
    return count;
}

void to_dimacs(const FormulaInstance& inst, std::ostream& os) {
    os << "c k " << inst.k << "\n";
    if (!inst.degrees.empty()) {
        int r = *std::min_element(inst.degrees.begin(), inst.degrees.end());
        long long c_r = 0, c_r1 = 0;
        for (int d : inst.degrees) {
            if (d == r) ++c_r;
            else if (d == r + 1) ++c_r1;
        }
        if (c_r + c_r1 == inst.n)
            os << "c degree r " << r << " n_r " << c_r << " n_r1 " << c_r1 << "\n";
    }
    os << "c seed " << inst.seed << "\n";
    os << "p cnf " << inst.n << " " << inst.m << "\n";
    for (long long c = 0; c < inst.m; ++c) {
        for (int s = 0; s < inst.k; ++s) os << inst.lit(c, s) << " ";
        os << "0\n";
    }
}

FormulaInstance parse_dimacs(std::istream& is) {
    FormulaInstance inst;
    std::string line;
    bool have_header = false;
    std::vector<int> cur;
    std::vector<std::vector<int>> clauses;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == 'c') {
            std::istringstream ls(line);
            std::string c, key;
            if (ls >> c >> key && key == "seed") ls >> inst.seed;
            continue;
        }
        if (line[0] == 'p') {
            std::istringstream ls(line);
            std::string p, fmt;
            if (!(ls >> p >> fmt >> inst.n >> inst.m) || fmt != "cnf")
                throw std::runtime_error("dimacs: bad problem line");
            have_header = true;
            continue;
        }
        std::istringstream ls(line);
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                clauses.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(lit);
            }
        }
    }
    if (!have_header) throw std::runtime_error("dimacs: missing problem line");
    if ((long long)clauses.size() != inst.m) throw std::runtime_error("dimacs: clause count");
    if (clauses.empty()) throw std::runtime_error("dimacs: no clauses");
    inst.k = (int)clauses[0].size();
    for (const auto& cl : clauses)
        if ((int)cl.size() != inst.k) throw std::runtime_error("dimacs: ragged clause widths");
    inst.clauses.reserve((size_t)(inst.m * inst.k));
    inst.degrees.assign((size_t)inst.n, 0);
    for (const auto& cl : clauses)
        for (int lit : cl) {
            if (lit == 0 || std::abs(lit) > inst.n)
                throw std::runtime_error("dimacs: literal out of range");
            inst.clauses.push_back(lit);
            if (lit > 0) inst.degrees[(size_t)(lit - 1)]++;
        }
    inst.simple = is_simple(inst);
    return inst;
}

}  // namespace rksat

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rksat/errors.hpp"
#include "rksat/formula_gen.hpp"

using namespace rksat;

namespace {

FormulaInstance hand_instance(int k, long long n, std::vector<int> clauses) {
    FormulaInstance inst;
    inst.k = k;
    inst.n = n;
    inst.m = (long long)clauses.size() / k;
    inst.clauses = std::move(clauses);
    return inst;
}

// chi-square upper quantile via the Wilson-Hilferty cube approximation
double chi2_quantile(double df, double z) {
    double t = 1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df));
    return df * t * t * t;
}

}  // namespace

TEST_CASE("generation is deterministic in the seed") {
    FiniteInstanceShape sh = shape_from_counts(3, 6, 12);
    FormulaInstance a = generate(sh, 42);
    FormulaInstance b = generate(sh, 42);
    CHECK(a.clauses == b.clauses);
    CHECK(a.seed == 42);
    FormulaInstance c = generate(sh, 43);
    CHECK(a.clauses != c.clauses);

    std::ostringstream s1, s2;
    to_dimacs(a, s1);
    to_dimacs(b, s2);
    CHECK(s1.str() == s2.str());
}

TEST_CASE("every literal appears exactly its degree") {
    // strictly 3-regular: k=3, n=6, m=12
    FiniteInstanceShape sh = shape_from_counts(3, 6, 12);
    CHECK(sh.edges == 36);
    CHECK(sh.n_r1 == 0);
    FormulaInstance inst = generate(sh, 1);
    REQUIRE((long long)inst.clauses.size() == sh.edges);
    std::map<int, long long> occ;
    for (int lit : inst.clauses) occ[lit]++;
    for (long long v = 1; v <= sh.n; ++v) {
        CAPTURE(v);
        CHECK(occ[(int)v] == 3);
        CHECK(occ[-(int)v] == 3);
    }
    CHECK(inst.degrees == std::vector<int>(6, 3));
}

TEST_CASE("mixed shapes put the degree-(r+1) variables last") {
    // k=3, n=5, m=4: 12 edges, degree sum 6 -> degrees (1,1,1,1,2)
    FiniteInstanceShape sh = shape_from_counts(3, 5, 4);
    CHECK(sh.profile.r == 1);
    CHECK(sh.n_r1 == 1);
    FormulaInstance inst = generate(sh, 9);
    CHECK(inst.degrees == std::vector<int>{1, 1, 1, 1, 2});
    std::map<int, long long> occ;
    for (int lit : inst.clauses) occ[lit]++;
    CHECK(occ[5] == 2);
    CHECK(occ[-5] == 2);
    CHECK(occ[1] == 1);
}

TEST_CASE("simplicity predicate") {
    CHECK(is_simple(hand_instance(3, 3, {1, 2, 3})));
    CHECK(!is_simple(hand_instance(3, 3, {1, -1, 2})));   // complementary pair
    CHECK(!is_simple(hand_instance(3, 3, {1, 2, 1})));    // repeated literal
    CHECK(!is_simple(hand_instance(3, 3, {1, 2, 3, 2, -2, 3})));
    FiniteInstanceShape sh = shape_from_counts(3, 6, 12);
    for (std::uint64_t s = 0; s < 20; ++s) {
        FormulaInstance inst = generate(sh, s);
        CHECK(inst.simple == is_simple(inst));
    }
}

TEST_CASE("exhaustive assignment counting") {
    FormulaInstance empty;
    empty.k = 3;
    empty.n = 3;
    empty.m = 0;
    CHECK(count_assignments(empty, Variant::SAT) == 8);
    CHECK(count_assignments(empty, Variant::NAE) == 8);

    FormulaInstance triple = hand_instance(3, 1, {1, 1, 1});
    CHECK(count_assignments(triple, Variant::SAT) == 1);
    CHECK(count_assignments(triple, Variant::NAE) == 0);

    FormulaInstance mixed = hand_instance(3, 2, {1, -2, 1});
    CHECK(count_assignments(mixed, Variant::SAT) == 3);
    CHECK(count_assignments(mixed, Variant::NAE) == 2);

    FormulaInstance wide;
    wide.k = 3;
    wide.n = 26;
    wide.m = 0;
    CHECK_THROWS_AS(count_assignments(wide, Variant::SAT), too_large);
}

TEST_CASE("DIMACS serialization matches the documented format") {
    FormulaInstance inst = hand_instance(3, 2, {1, -2, 1});
    std::ostringstream os;
    to_dimacs(inst, os);
    CHECK(os.str() == "c k 3\nc seed 0\np cnf 2 1\n1 -2 1 0\n");
    CHECK(os.str().find("p cnf 2 1\n1 -2 1 0") != std::string::npos);

    FiniteInstanceShape sh = shape_from_counts(3, 5, 4);
    FormulaInstance gen = generate(sh, 77);
    std::ostringstream gs;
    to_dimacs(gen, gs);
    std::string text = gs.str();
    CHECK(text.find("c k 3\n") != std::string::npos);
    CHECK(text.find("c degree r 1 n_r 4 n_r1 1\n") != std::string::npos);
    CHECK(text.find("c seed 77\n") != std::string::npos);
    CHECK(text.find("p cnf 5 4\n") != std::string::npos);
}

TEST_CASE("DIMACS round trip") {
    FiniteInstanceShape sh = shape_from_counts(3, 5, 4);
    FormulaInstance gen = generate(sh, 123456789);
    std::ostringstream os;
    to_dimacs(gen, os);
    std::istringstream is(os.str());
    FormulaInstance back = parse_dimacs(is);
    CHECK(back.k == gen.k);
    CHECK(back.n == gen.n);
    CHECK(back.m == gen.m);
    CHECK(back.seed == gen.seed);
    CHECK(back.clauses == gen.clauses);
    CHECK(back.degrees == gen.degrees);
    CHECK(back.simple == gen.simple);

    std::istringstream bad("p cnf 2 1\n1 -3 1 0\n");
    CHECK_THROWS(parse_dimacs(bad));
    std::istringstream ragged("p cnf 3 2\n1 2 3 0\n1 2 0\n");
    CHECK_THROWS(parse_dimacs(ragged));
}

TEST_CASE("generator is uniform over distinct slot sequences") {
    // 6-edge shape: 20 distinct clause sequences, each with multiplicity (3!)^2;
    // chi-square over 1e5 seeds at significance 0.001 (z = 3.0902)
    FiniteInstanceShape sh = shape_from_counts(3, 1, 2);
    const long long samples = 100000;
    std::map<std::vector<int>, long long> counts;
    for (long long i = 0; i < samples; ++i) counts[generate(sh, (std::uint64_t)i).clauses]++;
    CHECK(counts.size() == 20);
    double expect = samples / 20.0;
    double chi2 = 0.0;
    for (const auto& [key, c] : counts) {
        double d = (double)c - expect;
        chi2 += d * d / expect;
    }
    CAPTURE(chi2);
    CHECK(chi2 < chi2_quantile(19.0, 3.090232306167814));
}

TEST_CASE("derived per-instance seeds are distinct and stable") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(derive_seed(42, i));
    CHECK(seen.size() == 10000);
    CHECK(derive_seed(42, 0) == derive_seed(42, 0));
    CHECK(derive_seed(42, 0) != derive_seed(43, 0));
}

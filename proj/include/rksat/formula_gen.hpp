#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rksat/ensemble.hpp"
#include "rksat/genfunc.hpp"

namespace rksat {

struct FormulaInstance {
    int k = 0;
    long long n = 0;
    long long m = 0;
    std::vector<int> clauses;  // m*k signed literals, clause-major, slot order preserved
    std::vector<int> degrees;  // per-variable literal degree (same for both signs)
    std::uint64_t seed = 0;
    bool simple = false;       // every clause mentions k distinct variables

    int lit(long long c, int slot) const { return clauses[(size_t)(c * k + slot)]; }
};

// configuration model: lay out deg(v) copies of +v then deg(v) copies of -v
// (degree-(r+1) variables take the highest indices) and push them through a
// uniform random permutation onto the k*m clause slots
FormulaInstance generate(const FiniteInstanceShape& shape, std::uint64_t seed);

bool is_simple(const FormulaInstance& inst);

// exhaustive satisfying-assignment count; guarded at n <= 25
std::uint64_t count_assignments(const FormulaInstance& inst, Variant v);

void to_dimacs(const FormulaInstance& inst, std::ostream& os);
FormulaInstance parse_dimacs(std::istream& is);

// stream-independent per-sample seeds (splitmix64 over base ^ index)
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace rksat

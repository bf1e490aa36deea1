#pragma once

#include <stdexcept>
#include <string>

namespace rksat {

// Parameters describe an ensemble/shape that cannot exist (odd edge total,
// non-integral clause count, variable counts out of range, ...).
struct non_realizable : std::invalid_argument {
    explicit non_realizable(const std::string& what) : std::invalid_argument(what) {}
};

// A numeric procedure could not certify its result (saddle solve diverged,
// dominance margin inside the indeterminate band, bisection invariant broken).
struct inconclusive_error : std::runtime_error {
    explicit inconclusive_error(const std::string& what) : std::runtime_error(what) {}
};

// Request exceeds a hard resource guard (exact oracle size, assignment count width).
struct too_large : std::invalid_argument {
    explicit too_large(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace rksat

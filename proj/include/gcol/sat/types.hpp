#pragma once

// basic SAT vocabulary shared by the solver, encodings and the propagator

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gcol::sat {

// literal wrapping a signed dimacs-style integer: +v / -v, var ids 1-based.
// a default-constructed literal is the sentinel "none"
struct Lit {
    int code = 0;

    Lit() = default;
    explicit Lit(int dimacs) : code(dimacs) {}
    static Lit pos(int var) { return Lit(var); }
    static Lit neg(int var) { return Lit(-var); }

    int var() const { return code < 0 ? -code : code; }
    bool positive() const { return code > 0; }
    bool none() const { return code == 0; }
    Lit operator-() const { return Lit(-code); }

    // dense index for watch lists: 2v for +v, 2v+1 for -v
    size_t index() const { return (static_cast<size_t>(var()) << 1) | (code < 0 ? 1u : 0u); }

    auto operator<=>(const Lit&) const = default;
};

using Clause = std::vector<Lit>;

// assignment values: +1 true, -1 false, 0 unassigned
using Value = signed char;
constexpr Value kTrue = 1;
constexpr Value kFalse = -1;
constexpr Value kUnassigned = 0;

enum class Status { sat, unsat, unknown };

}  // namespace gcol::sat

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mbqc/bitvec.hpp"

namespace mbqc {

// Linear system A x = b over GF(2). mat holds `rows` bit rows of width
// `cols`; rhs has one bit per row.
struct GF2System {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<BitVec> mat;
    BitVec rhs;
};

// Gaussian elimination with pivoting on the first set bit of each column,
// scanned left to right. Free variables are fixed to zero, so the solution is
// deterministic for a given row and column order. Returns nullopt when the
// system is inconsistent. The returned x always satisfies A x = b exactly;
// this is re-checked before returning.
std::optional<BitVec> gf2_solve(const GF2System& sys);

} // namespace mbqc

#include "mbqc/gf2.hpp"

#include "mbqc/errors.hpp"

namespace mbqc {

std::optional<BitVec> gf2_solve(const GF2System& sys) {
    if (sys.mat.size() != sys.rows)
        throw ParameterError("gf2_solve: matrix row count does not match rows");
    if (sys.rhs.size() != sys.rows)
        throw ParameterError("gf2_solve: rhs size does not match rows");
    for (const auto& r : sys.mat)
        if (r.size() != sys.cols)
            throw ParameterError("gf2_solve: matrix row width does not match cols");

    std::vector<BitVec> a = sys.mat;
    BitVec b = sys.rhs;

    std::vector<std::size_t> pivot_col; // per eliminated row, in row order
    std::size_t rank = 0;
    for (std::size_t col = 0; col < sys.cols && rank < sys.rows; ++col) {
        std::size_t p = rank;
        while (p < sys.rows && !a[p].test(col)) ++p;
        if (p == sys.rows) continue; // free column
        std::swap(a[rank], a[p]);
        {
            bool t = b.test(rank), s = b.test(p);
            b.set(rank, s);
            b.set(p, t);
        }
        for (std::size_t r = 0; r < sys.rows; ++r) {
            if (r != rank && a[r].test(col)) {
                a[r] ^= a[rank];
                if (b.test(rank)) b.flip(r);
            }
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t r = rank; r < sys.rows; ++r)
        if (b.test(r)) return std::nullopt; // 0 = 1 row, inconsistent

    BitVec x(sys.cols);
    for (std::size_t r = 0; r < rank; ++r)
        if (b.test(r)) x.set(pivot_col[r]);

    // exact verification against the original system
    for (std::size_t r = 0; r < sys.rows; ++r) {
        BitVec row = sys.mat[r];
        row &= x;
        if ((row.count() & 1u) != static_cast<std::size_t>(sys.rhs.test(r)))
            throw InvariantError("gf2_solve: solution failed verification");
    }
    return x;
}

} // namespace mbqc

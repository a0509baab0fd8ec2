#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace mbqc {

// Fixed-width bit vector over 64-bit words. Adjacency rows and GF(2) system
// rows use xor as addition, so the hot operations are operator^= and scans
// for set bits.
class BitVec {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }

    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool v = true) {
        std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v)
            w_[i >> 6] |= m;
        else
            w_[i >> 6] &= ~m;
    }

    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    void clear() { std::fill(w_.begin(), w_.end(), 0); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }

    BitVec& operator&=(const BitVec& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }

    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

    // Index of the first set bit at or after `from`, npos when there is none.
    std::size_t find_next(std::size_t from = 0) const {
        if (from >= n_) return npos;
        std::size_t k = from >> 6;
        std::uint64_t w = w_[k] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w) {
                std::size_t i = (k << 6) + std::countr_zero(w);
                return i < n_ ? i : npos;
            }
            if (++k == w_.size()) return npos;
            w = w_[k];
        }
    }

    // Ascending indices of all set bits.
    std::vector<std::uint32_t> bits() const {
        std::vector<std::uint32_t> out;
        for (std::size_t i = find_next(0); i != npos; i = find_next(i + 1))
            out.push_back(static_cast<std::uint32_t>(i));
        return out;
    }

    friend bool operator==(const BitVec& a, const BitVec& b) {
        return a.n_ == b.n_ && a.w_ == b.w_;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace mbqc

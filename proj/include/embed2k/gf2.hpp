#pragma once

// Word-packed linear algebra over GF(2).

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "embed2k/errors.hpp"

namespace embed2k::gf2 {

class BitVector {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}

    std::size_t size() const noexcept { return size_; }

    bool get(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i, bool value = true) noexcept {
        const Word mask = Word{1} << (i % kWordBits);
        if (value)
            words_[i / kWordBits] |= mask;
        else
            words_[i / kWordBits] &= ~mask;
    }
    void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

    BitVector& operator^=(const BitVector& other) noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector& b) noexcept { return a ^= b; }

    bool any() const noexcept {
        for (Word w : words_)
            if (w) return true;
        return false;
    }
    bool none() const noexcept { return !any(); }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    /// Index of the lowest set bit, or size() when the vector is zero.
    std::size_t first() const noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w]) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
        return size_;
    }

    /// Lowest set bit at index >= from, or size() when there is none.
    std::size_t next(std::size_t from) const noexcept {
        if (from >= size_) return size_;
        std::size_t w = from / kWordBits;
        Word bits = words_[w] & (~Word{0} << (from % kWordBits));
        while (true) {
            if (bits) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
            if (++w == words_.size()) return size_;
            bits = words_[w];
        }
    }

    /// Index of the highest set bit, or size() when the vector is zero.
    std::size_t last() const noexcept {
        for (std::size_t w = words_.size(); w-- > 0;)
            if (words_[w]) return w * kWordBits + (kWordBits - 1 - static_cast<std::size_t>(std::countl_zero(words_[w])));
        return size_;
    }

    /// Parity of the bitwise AND.
    bool dot(const BitVector& other) const noexcept {
        Word acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
        return std::popcount(acc) & 1;
    }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            Word bits = words_[w];
            while (bits) {
                out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
        return out;
    }

    const std::vector<Word>& words() const noexcept { return words_; }

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    std::size_t size_ = 0;
    std::vector<Word> words_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i);
        return m;
    }

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    bool get(std::size_t r, std::size_t c) const noexcept { return rows_[r].get(c); }
    void set(std::size_t r, std::size_t c, bool v = true) noexcept { rows_[r].set(c, v); }

    BitVector& row(std::size_t r) noexcept { return rows_[r]; }
    const BitVector& row(std::size_t r) const noexcept { return rows_[r]; }

    void push_row(BitVector v) {
        if (rows_.empty() && cols_ == 0) cols_ = v.size();
        if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "row width does not match matrix");
        rows_.push_back(std::move(v));
    }

    BitVector column(std::size_t c) const {
        BitVector v(rows());
        for (std::size_t r = 0; r < rows(); ++r)
            if (get(r, c)) v.set(r);
        return v;
    }

    BitMatrix transpose() const {
        BitMatrix t(cols_, rows());
        for (std::size_t r = 0; r < rows(); ++r)
            for (std::size_t c : rows_[r].support()) t.set(c, r);
        return t;
    }

    BitVector operator*(const BitVector& x) const {
        if (x.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
        BitVector y(rows());
        for (std::size_t r = 0; r < rows(); ++r)
            if (rows_[r].dot(x)) y.set(r);
        return y;
    }

    friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
        if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
        BitMatrix c(a.rows(), b.cols());
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t k : a.row(r).support()) c.row(r) ^= b.row(k);
        return c;
    }

    bool is_symmetric() const {
        if (rows() != cols_) return false;
        for (std::size_t r = 0; r < rows(); ++r)
            for (std::size_t c = r + 1; c < cols_; ++c)
                if (get(r, c) != get(c, r)) return false;
        return true;
    }

    /// Symmetric matrices are odd iff some diagonal entry is 1.
    bool is_odd() const {
        for (std::size_t i = 0; i < std::min(rows(), cols_); ++i)
            if (get(i, i)) return true;
        return false;
    }

    bool is_zero() const {
        for (const auto& r : rows_)
            if (r.any()) return false;
        return true;
    }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

/// Incrementally built echelon basis of a subspace of GF(2)^n.
///
/// Each stored vector has a distinct pivot (its lowest set bit) and, when
/// tracking is enabled, remembers which inserted generators it is the sum of.
/// reduce() then doubles as a membership test with a witness.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t dim, std::size_t generators = 0)
        : dim_(dim), generators_(generators), pivot_slot_(dim, kNone) {}

    std::size_t dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return basis_.size(); }
    bool tracks() const noexcept { return generators_ > 0; }

    /// Inserts v; `generator` is its index among tracked generators (ignored when untracked).
    bool insert(BitVector v, std::size_t generator = 0) {
        BitVector combo(generators_);
        if (generators_ > 0) combo.set(generator);
        reduce_in_place(v, combo);
        if (v.none()) return false;
        const std::size_t p = v.first();
        pivot_slot_[p] = basis_.size();
        basis_.push_back(std::move(v));
        combos_.push_back(std::move(combo));
        return true;
    }

    struct Reduction {
        BitVector residual;
        BitVector combination;  ///< generators whose sum equals (input - residual)
    };

    Reduction reduce(BitVector v) const {
        BitVector combo(generators_);
        reduce_in_place(v, combo);
        return {std::move(v), std::move(combo)};
    }

    bool contains(const BitVector& v) const { return reduce(v).residual.none(); }

    const std::vector<BitVector>& basis() const noexcept { return basis_; }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    void reduce_in_place(BitVector& v, BitVector& combo) const {
        // Basis vectors only touch bits at or above their pivot, so one upward sweep suffices.
        for (std::size_t p = v.first(); p < dim_; p = v.next(p + 1)) {
            const std::size_t slot = pivot_slot_[p];
            if (slot == kNone) continue;
            v ^= basis_[slot];
            if (generators_ > 0) combo ^= combos_[slot];
        }
    }

    std::size_t dim_;
    std::size_t generators_;
    std::vector<std::size_t> pivot_slot_;
    std::vector<BitVector> basis_;
    std::vector<BitVector> combos_;
};

/// Reduced row echelon form in place; returns pivot columns in row order.
inline std::vector<std::size_t> rref(BitMatrix& a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && !a.get(p, c)) ++p;
        if (p == a.rows()) continue;
        std::swap(a.row(p), a.row(r));
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (i != r && a.get(i, c)) a.row(i) ^= a.row(r);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(BitMatrix a) { return rref(a).size(); }

/// Basis of {x : A x = 0}.
inline std::vector<BitVector> nullspace(BitMatrix a) {
    const auto pivots = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<BitVector> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        BitVector x(a.cols());
        x.set(free);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (a.get(i, free)) x.set(pivots[i]);
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Some x with A x = b, or nullopt when b is outside the column space.
inline std::optional<BitVector> solve(const BitMatrix& a, const BitVector& b) {
    if (b.size() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "right-hand side length mismatch");
    BitMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c : a.row(r).support()) aug.set(r, c);
        if (b.get(r)) aug.set(r, a.cols());
    }
    const auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    BitVector x(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        if (aug.get(i, a.cols())) x.set(pivots[i]);
    return x;
}

inline BitMatrix inverse(const BitMatrix& a) {
    if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
    const std::size_t n = a.rows();
    BitMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c : a.row(r).support()) aug.set(r, c);
        aug.set(r, n + r);
    }
    const auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] >= n) throw Error(ErrorKind::PreconditionFailed, "matrix is singular over GF(2)");
    BitMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (aug.get(r, n + c)) inv.set(r, c);
    return inv;
}

}  // namespace embed2k::gf2

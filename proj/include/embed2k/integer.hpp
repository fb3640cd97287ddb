#pragma once

// Exact integer and rational matrix algebra (GMP-backed).

#include <algorithm>
#include <cstddef>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "embed2k/errors.hpp"

namespace embed2k {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Dense integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
            for (long v : row) data_.emplace_back(v);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Int& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    std::vector<Int> operator*(const std::vector<Int>& x) const {
        if (x.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
        std::vector<Int> y(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if ((*this)(i, j) != 0) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    bool is_square() const noexcept { return rows_ == cols_; }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    bool is_skew_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                if ((*this)(i, j) != -(*this)(j, i)) return false;
        return true;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Int& v) { return v == 0; });
    }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
    }
    /// row[dst] += factor * row[src]
    void add_row(std::size_t dst, std::size_t src, const Int& factor) {
        if (factor == 0) return;
        for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
    }
    /// col[dst] += factor * col[src]
    void add_col(std::size_t dst, std::size_t src, const Int& factor) {
        if (factor == 0) return;
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
    }

    std::vector<Int> row(std::size_t r) const { return {data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_}; }
    std::vector<Int> column(std::size_t c) const {
        std::vector<Int> v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

/// Floor division for GMP integers (C++ division truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Rank over Q by fraction-free (Bareiss) elimination.
inline std::size_t rank_over_q(IntMatrix a) {
    std::size_t rank = 0;
    Int prev = 1;
    for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
        std::size_t p = rank;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(p, rank);
        for (std::size_t i = rank + 1; i < a.rows(); ++i) {
            for (std::size_t j = c + 1; j < a.cols(); ++j)
                a(i, j) = (a(rank, c) * a(i, j) - a(i, c) * a(rank, j)) / prev;
            a(i, c) = 0;
        }
        prev = a(rank, c);
        ++rank;
    }
    return rank;
}

/// Determinant by Bareiss elimination.
inline Int determinant(IntMatrix a) {
    if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
    const std::size_t n = a.rows();
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            a.swap_rows(p, k);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return n == 0 ? Int(1) : Int(sign * a(n - 1, n - 1));
}

using RationalMatrix = std::vector<std::vector<Rational>>;

inline Rational rational_determinant(RationalMatrix a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(a[p], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            const Rational f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det;
}

inline std::size_t rational_rank(RationalMatrix a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] == 0) continue;
            const Rational f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

/// Unique solution of a square system, or nullopt when singular.
inline std::optional<std::vector<Rational>> solve_square(RationalMatrix a, std::vector<Rational> b) {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[p], a[k]);
        std::swap(b[p], b[k]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0) continue;
            const Rational f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            b[i] -= f * b[k];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
    return b;
}

struct SmithForm {
    IntMatrix u;  ///< unimodular, rows x rows
    IntMatrix d;  ///< diagonal with d_0 | d_1 | ..., same shape as the input
    IntMatrix v;  ///< unimodular, cols x cols
    std::size_t rank = 0;
};

/// U * A * V = D.
inline SmithForm smith_normal_form(const IntMatrix& a) {
    SmithForm s{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols()), 0};
    IntMatrix& d = s.d;
    const std::size_t m = d.rows(), n = d.cols();

    auto find_min = [&](std::size_t t) -> std::optional<std::pair<std::size_t, std::size_t>> {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Int best_abs;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (d(i, j) == 0) continue;
                Int v = abs(d(i, j));
                if (!best || v < best_abs) {
                    best = {i, j};
                    best_abs = v;
                    if (best_abs == 1) return best;
                }
            }
        return best;
    };

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        auto pivot = find_min(t);
        if (!pivot) break;
        while (true) {
            auto [pi, pj] = *pivot;
            if (pi != t) {
                d.swap_rows(pi, t);
                s.u.swap_rows(pi, t);
            }
            if (pj != t) {
                d.swap_cols(pj, t);
                s.v.swap_cols(pj, t);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d(i, t) == 0) continue;
                const Int q = floor_div(d(i, t), d(t, t));
                d.add_row(i, t, -q);
                s.u.add_row(i, t, -q);
                if (d(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d(t, j) == 0) continue;
                const Int q = floor_div(d(t, j), d(t, t));
                d.add_col(j, t, -q);
                s.v.add_col(j, t, -q);
                if (d(t, j) != 0) clean = false;
            }
            if (!clean) {
                // A smaller remainder appeared in row/column t; pivot on it.
                std::optional<std::pair<std::size_t, std::size_t>> best{{t, t}};
                Int best_abs = abs(d(t, t));
                for (std::size_t i = t + 1; i < m; ++i)
                    if (d(i, t) != 0 && abs(d(i, t)) < best_abs) best = {i, t}, best_abs = abs(d(i, t));
                for (std::size_t j = t + 1; j < n; ++j)
                    if (d(t, j) != 0 && abs(d(t, j)) < best_abs) best = {t, j}, best_abs = abs(d(t, j));
                pivot = best;
                continue;
            }
            // Divisibility: fold a non-divisible row into row t and retry.
            std::optional<std::size_t> bad;
            for (std::size_t i = t + 1; i < m && !bad; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (d(i, j) % d(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (!bad) break;
            d.add_row(t, *bad, 1);
            s.u.add_row(t, *bad, 1);
            pivot = std::pair{t, t};
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            s.u.negate_row(t);
        }
        s.rank = t + 1;
    }
    return s;
}

/// Basis of the integer kernel {x in Z^n : A x = 0} (a lattice basis).
inline std::vector<std::vector<Int>> integer_kernel(const IntMatrix& a) {
    const SmithForm s = smith_normal_form(a);
    std::vector<std::vector<Int>> basis;
    for (std::size_t c = s.rank; c < a.cols(); ++c) basis.push_back(s.v.column(c));
    return basis;
}

inline Int gcd_of(const std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    return g;
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
inline std::tuple<Int, Int, Int> extended_gcd(const Int& a, const Int& b) {
    Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const Int q = old_r / r;
        std::tie(old_r, r) = std::make_tuple(r, Int(old_r - q * r));
        std::tie(old_s, s) = std::make_tuple(s, Int(old_s - q * s));
        std::tie(old_t, t) = std::make_tuple(t, Int(old_t - q * t));
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

/// Integer echelon basis of a sublattice of Z^dim, built by insertion.
///
/// Rows keep distinct pivots (first nonzero coordinate); pivot collisions are
/// resolved with unimodular 2x2 gcd steps, so the rows always generate exactly
/// the lattice spanned by the inserted generators. Each row records its
/// integer combination of generators, which reduce() turns into a witness.
class LatticeEchelon {
public:
    LatticeEchelon(std::size_t dim, std::size_t generators)
        : dim_(dim), generators_(generators), pivot_slot_(dim, kNone) {}

    std::size_t dim() const noexcept { return dim_; }
    std::size_t rank() const noexcept { return rows_.size(); }

    void insert(std::vector<Int> v, std::size_t generator) {
        std::vector<Int> combo(generators_);
        combo.at(generator) = 1;
        for (std::size_t p = first_nonzero(v, 0); p < dim_; p = first_nonzero(v, p + 1)) {
            const std::size_t slot = pivot_slot_[p];
            if (slot == kNone) {
                if (v[p] < 0) {
                    for (auto& x : v) x = -x;
                    for (auto& x : combo) x = -x;
                }
                pivot_slot_[p] = rows_.size();
                rows_.push_back(std::move(v));
                combos_.push_back(std::move(combo));
                return;
            }
            auto& row = rows_[slot];
            auto& row_combo = combos_[slot];
            const Int a = row[p], b = v[p];
            if (b % a == 0) {
                const Int q = b / a;
                axpy(v, row, -q, p);
                axpy(combo, row_combo, -q, 0);
                continue;
            }
            auto [g, s, t] = extended_gcd(a, b);
            const Int ag = a / g, bg = b / g;
            std::vector<Int> new_row(dim_), new_combo(generators_);
            for (std::size_t i = p; i < dim_; ++i) new_row[i] = s * row[i] + t * v[i];
            for (std::size_t i = 0; i < generators_; ++i) new_combo[i] = s * row_combo[i] + t * combo[i];
            for (std::size_t i = p; i < dim_; ++i) v[i] = ag * v[i] - bg * row[i];
            for (std::size_t i = 0; i < generators_; ++i) combo[i] = ag * combo[i] - bg * row_combo[i];
            row = std::move(new_row);
            row_combo = std::move(new_combo);
        }
    }

    struct Reduction {
        bool member = false;
        std::vector<Int> combination;  ///< valid only when member
    };

    Reduction reduce(std::vector<Int> w) const {
        if (w.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "lattice vector length mismatch");
        std::vector<Int> combo(generators_);
        for (std::size_t p = first_nonzero(w, 0); p < dim_; p = first_nonzero(w, p + 1)) {
            const std::size_t slot = pivot_slot_[p];
            if (slot == kNone || w[p] % rows_[slot][p] != 0) return {false, {}};
            const Int q = w[p] / rows_[slot][p];
            axpy(w, rows_[slot], -q, p);
            axpy(combo, combos_[slot], q, 0);
        }
        return {true, std::move(combo)};
    }

    const std::vector<std::vector<Int>>& rows() const noexcept { return rows_; }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    static std::size_t first_nonzero(const std::vector<Int>& v, std::size_t from) {
        for (std::size_t i = from; i < v.size(); ++i)
            if (v[i] != 0) return i;
        return v.size();
    }
    static void axpy(std::vector<Int>& y, const std::vector<Int>& x, const Int& a, std::size_t from) {
        if (a == 0) return;
        for (std::size_t i = from; i < y.size(); ++i)
            if (x[i] != 0) y[i] += a * x[i];
    }

    std::size_t dim_;
    std::size_t generators_;
    std::vector<std::size_t> pivot_slot_;
    std::vector<std::vector<Int>> rows_;
    std::vector<std::vector<Int>> combos_;
};

}  // namespace embed2k

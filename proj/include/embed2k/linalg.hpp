#pragma once

// Intersection forms, Gramians and the decompositions A = Y^T H Y over GF(2) and Z.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "embed2k/complex.hpp"
#include "embed2k/errors.hpp"
#include "embed2k/gf2.hpp"
#include "embed2k/integer.hpp"

namespace embed2k {

enum class FormType { Even, Odd };

inline const char* to_string(FormType t) { return t == FormType::Even ? "even" : "odd"; }

inline FormType parse_form_type(const std::string& s) {
    if (s == "even") return FormType::Even;
    if (s == "odd") return FormType::Odd;
    throw Error(ErrorKind::Parse, "form type must be \"even\" or \"odd\", got \"" + s + "\"");
}

/// Description of an intersection form: (rank, type) over Z2, or a standard
/// or explicit integer matrix over Z.
struct FormSpec {
    enum class Kind { Z2RankType, Symplectic, Diagonal, Explicit };

    Kind kind = Kind::Z2RankType;
    std::size_t rank = 0;  // Z2
    FormType type = FormType::Even;
    std::size_t genus = 0;  // symplectic
    std::size_t r_plus = 0, r_minus = 0;
    IntMatrix matrix;  // explicit

    Ring ring() const noexcept { return kind == Kind::Z2RankType ? Ring::Z2 : Ring::Z; }

    static FormSpec z2(std::size_t rank, FormType type) {
        if (type == FormType::Even && rank % 2 != 0)
            throw Error(ErrorKind::InvalidArgument, "an even form over Z2 has even rank");
        if (type == FormType::Odd && rank == 0) throw Error(ErrorKind::InvalidArgument, "the zero form is even");
        FormSpec s;
        s.rank = rank;
        s.type = type;
        return s;
    }
    static FormSpec symplectic(std::size_t g) {
        FormSpec s;
        s.kind = Kind::Symplectic;
        s.genus = g;
        return s;
    }
    static FormSpec diagonal(std::size_t plus, std::size_t minus) {
        FormSpec s;
        s.kind = Kind::Diagonal;
        s.r_plus = plus;
        s.r_minus = minus;
        return s;
    }
    static FormSpec explicit_matrix(IntMatrix m) {
        if (!m.is_symmetric() && !m.is_skew_symmetric())
            throw Error(ErrorKind::InvalidArgument, "form matrix must be symmetric or skew-symmetric");
        FormSpec s;
        s.kind = Kind::Explicit;
        s.matrix = std::move(m);
        return s;
    }
};

/// H_g over GF(2): g diagonal blocks [[0,1],[1,0]].
inline gf2::BitMatrix hyperbolic2(std::size_t g) {
    gf2::BitMatrix h(2 * g, 2 * g);
    for (std::size_t i = 0; i < g; ++i) {
        h.set(2 * i, 2 * i + 1);
        h.set(2 * i + 1, 2 * i);
    }
    return h;
}

/// H_{g,Z}: g diagonal blocks [[0,1],[-1,0]].
inline IntMatrix symplectic_z(std::size_t g) {
    IntMatrix h(2 * g, 2 * g);
    for (std::size_t i = 0; i < g; ++i) {
        h(2 * i, 2 * i + 1) = 1;
        h(2 * i + 1, 2 * i) = -1;
    }
    return h;
}

inline gf2::BitMatrix form_matrix2(const FormSpec& spec) {
    if (spec.ring() != Ring::Z2) throw Error(ErrorKind::RingMismatch, "form is not over Z2");
    return spec.type == FormType::Even ? hyperbolic2(spec.rank / 2) : gf2::BitMatrix::identity(spec.rank);
}

inline IntMatrix form_matrix_z(const FormSpec& spec) {
    switch (spec.kind) {
        case FormSpec::Kind::Symplectic: return symplectic_z(spec.genus);
        case FormSpec::Kind::Diagonal: {
            IntMatrix d(spec.r_plus + spec.r_minus, spec.r_plus + spec.r_minus);
            for (std::size_t i = 0; i < d.rows(); ++i) d(i, i) = i < spec.r_plus ? 1 : -1;
            return d;
        }
        case FormSpec::Kind::Explicit: return spec.matrix;
        case FormSpec::Kind::Z2RankType: break;
    }
    throw Error(ErrorKind::RingMismatch, "form is not over Z");
}

// JSON: matrices are row arrays.

inline IntMatrix int_matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw Error(ErrorKind::Parse, "matrix must be an array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = rows ? j[0].size() : 0;
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) throw Error(ErrorKind::Parse, "matrix rows must have equal length");
        for (std::size_t c = 0; c < cols; ++c) {
            const auto& x = j[r][c];
            if (x.is_number_integer()) m(r, c) = x.get<long long>();
            else if (x.is_string()) {
                try {
                    m(r, c) = Int(x.get<std::string>());
                } catch (const std::exception&) {
                    throw Error(ErrorKind::Parse, "matrix entry is not an integer");
                }
            } else
                throw Error(ErrorKind::Parse, "matrix entry is not an integer");
        }
    }
    return m;
}

/// Entries that fit in 64 bits are numbers, larger ones decimal strings.
inline nlohmann::json to_json_value(const Int& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return v.convert_to<long long>();
    return v.str();
}

inline nlohmann::json to_json(const IntMatrix& m) {
    nlohmann::json j = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json_value(m(r, c)));
        j.push_back(std::move(row));
    }
    return j;
}

inline nlohmann::json to_json(const gf2::BitMatrix& m) {
    nlohmann::json j = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.get(r, c) ? 1 : 0);
        j.push_back(std::move(row));
    }
    return j;
}

inline FormSpec form_spec_from_json(const nlohmann::json& j) {
    try {
        const std::string ring = j.at("ring").get<std::string>();
        if (ring == "Z2") {
            const long long r = j.at("rank").get<long long>();
            if (r < 0) throw Error(ErrorKind::InvalidArgument, "rank must be nonnegative");
            return FormSpec::z2(static_cast<std::size_t>(r), parse_form_type(j.at("type").get<std::string>()));
        }
        if (ring != "Z") throw Error(ErrorKind::Parse, "ring must be \"Z2\" or \"Z\"");
        if (j.contains("matrix")) return FormSpec::explicit_matrix(int_matrix_from_json(j.at("matrix")));
        const std::string standard = j.at("standard").get<std::string>();
        if (standard == "symplectic") return FormSpec::symplectic(j.at("g").get<std::size_t>());
        if (standard == "diagonal")
            return FormSpec::diagonal(j.value("r_plus", std::size_t{0}), j.value("r_minus", std::size_t{0}));
        throw Error(ErrorKind::Parse, "unknown standard form \"" + standard + "\"");
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("form spec: ") + e.what());
    }
}

inline FormSpec parse_form_spec(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("form spec is not JSON: ") + e.what());
    }
    return form_spec_from_json(j);
}

inline nlohmann::json to_json(const FormSpec& s) {
    switch (s.kind) {
        case FormSpec::Kind::Z2RankType: return {{"ring", "Z2"}, {"rank", s.rank}, {"type", to_string(s.type)}};
        case FormSpec::Kind::Symplectic: return {{"ring", "Z"}, {"standard", "symplectic"}, {"g", s.genus}};
        case FormSpec::Kind::Diagonal:
            return {{"ring", "Z"}, {"standard", "diagonal"}, {"r_plus", s.r_plus}, {"r_minus", s.r_minus}};
        case FormSpec::Kind::Explicit: return {{"ring", "Z"}, {"matrix", to_json(s.matrix)}};
    }
    return nullptr;
}

// Ranks and Gramians.

inline std::size_t gf2_rank(const gf2::BitMatrix& a) { return gf2::rank(a); }
inline std::size_t int_rank_over_Q(const IntMatrix& a) { return rank_over_q(a); }

inline gf2::BitMatrix gramian(const gf2::BitMatrix& form, const gf2::BitMatrix& y) {
    if (form.rows() != form.cols() || form.cols() != y.rows())
        throw Error(ErrorKind::DimensionMismatch, "gramian: form and vectors do not fit");
    return y.transpose() * form * y;
}

inline IntMatrix gramian(const IntMatrix& form, const IntMatrix& y) {
    if (form.rows() != form.cols() || form.cols() != y.rows())
        throw Error(ErrorKind::DimensionMismatch, "gramian: form and vectors do not fit");
    return y.transpose() * form * y;
}

// Decompositions.

struct Decomposition2 {
    gf2::BitMatrix form;  ///< H_{r/2} or the identity I_r
    gf2::BitMatrix y;     ///< r x n, A = y^T form y
};

/// A = Y^T H Y with H the standard form of A's rank and type.
///
/// Works as a Gram-Schmidt pass for the bilinear form A: diagonal-one vectors
/// first, then hyperbolic pairs, the rest spans the radical. For odd A each
/// hyperbolic pair (u, w) is traded, together with a diagonal-one vector e, for
/// u+e, w+e, u+w+e, which are pairwise orthogonal with square 1.
inline Decomposition2 decompose_gf2(const gf2::BitMatrix& a) {
    if (!a.is_symmetric()) throw Error(ErrorKind::InvalidArgument, "decompose_gf2: matrix is not symmetric");
    const std::size_t n = a.rows();
    auto form = [&](const gf2::BitVector& x, const gf2::BitVector& z) { return x.dot(a * z); };

    std::vector<gf2::BitVector> pool;
    for (std::size_t i = 0; i < n; ++i) {
        gf2::BitVector e(n);
        e.set(i);
        pool.push_back(std::move(e));
    }
    std::vector<gf2::BitVector> units;
    std::vector<std::pair<gf2::BitVector, gf2::BitVector>> pairs;

    for (;;) {
        std::optional<std::size_t> diag;
        for (std::size_t i = 0; i < pool.size() && !diag; ++i)
            if (form(pool[i], pool[i])) diag = i;
        if (diag) {
            gf2::BitVector e = pool[*diag];
            pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(*diag));
            for (auto& x : pool)
                if (form(x, e)) x ^= e;
            units.push_back(std::move(e));
            continue;
        }
        std::optional<std::pair<std::size_t, std::size_t>> hit;
        for (std::size_t i = 0; i < pool.size() && !hit; ++i)
            for (std::size_t j = i + 1; j < pool.size() && !hit; ++j)
                if (form(pool[i], pool[j])) hit = std::make_pair(i, j);
        if (!hit) break;
        gf2::BitVector u = pool[hit->first];
        gf2::BitVector w = pool[hit->second];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(hit->second));
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(hit->first));
        for (auto& x : pool) {
            const bool xu = form(x, u);
            const bool xw = form(x, w);
            if (xw) x ^= u;
            if (xu) x ^= w;
        }
        pairs.emplace_back(std::move(u), std::move(w));
    }

    const bool odd = !units.empty();
    if (odd)
        for (auto& [u, w] : pairs) {
            gf2::BitVector e = units.back();
            units.pop_back();
            units.push_back(u ^ e);
            units.push_back(w ^ e);
            units.push_back(u ^ w ^ e);
        }

    // Basis: nondegenerate vectors first, radical after; Y = leading rows of its inverse.
    std::vector<gf2::BitVector> basis;
    if (odd) basis = units;
    else
        for (auto& [u, w] : pairs) {
            basis.push_back(u);
            basis.push_back(w);
        }
    const std::size_t r = basis.size();
    for (auto& x : pool) basis.push_back(x);
    gf2::BitMatrix p(n, n);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t row : basis[c].support()) p.set(row, c);
    const gf2::BitMatrix inv = gf2::inverse(p);

    Decomposition2 out;
    out.form = odd ? gf2::BitMatrix::identity(r) : hyperbolic2(r / 2);
    out.y = gf2::BitMatrix(r, n);
    for (std::size_t i = 0; i < r; ++i) out.y.row(i) = inv.row(i);
    if (gramian(out.form, out.y) != a) throw Error(ErrorKind::PreconditionFailed, "decompose_gf2: round trip failed");
    return out;
}

struct DecompositionZ {
    std::size_t rank = 0;  ///< even
    IntMatrix y;           ///< rank x n, A = y^T H_{rank/2,Z} y
};

/// A = Y^T H_{r/2,Z} Y for skew-symmetric integer A.
///
/// Integral congruence reduction A -> P^T A P = (+) d_i [[0,1],[-1,0]] (+) 0 with
/// P unimodular, using the smallest nonzero entry as pivot. Then
/// Y = diag(1, d_1, 1, d_2, ...) times the leading rows of P^{-1}.
inline DecompositionZ decompose_skew_Z(const IntMatrix& a) {
    if (!a.is_skew_symmetric()) throw Error(ErrorKind::InvalidArgument, "decompose_skew_Z: matrix is not skew-symmetric");
    const std::size_t n = a.rows();
    IntMatrix m = a;
    IntMatrix q = IntMatrix::identity(n);  // P^{-1}

    // x_c <- x_c + f x_j in the basis: congruence by E, and P^{-1} <- E^{-1} P^{-1}.
    auto add = [&](std::size_t c, std::size_t j, const Int& f) {
        if (f == 0) return;
        m.add_col(c, j, f);
        m.add_row(c, j, f);
        q.add_row(j, c, -f);
    };
    auto swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        m.swap_cols(i, j);
        m.swap_rows(i, j);
        q.swap_rows(i, j);
    };

    std::vector<Int> scale;
    std::size_t i = 0;
    while (i + 1 < n) {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t r = i; r < n; ++r)
            for (std::size_t c = r + 1; c < n; ++c)
                if (m(r, c) != 0 && (!best || abs(m(r, c)) < abs(m(best->first, best->second)))) best = std::make_pair(r, c);
        if (!best) break;
        swap(i, best->first);
        swap(i + 1, best->second == i ? best->first : best->second);
        if (m(i, i + 1) < 0) swap(i, i + 1);
        const Int d = m(i, i + 1);
        bool clean = true;
        for (std::size_t c = i + 2; c < n; ++c) {
            // m(i,c) -= f d via x_c -= f x_{i+1}; m(i+1,c) -= g d via x_c += g x_i.
            add(c, i + 1, -floor_div(m(i, c), d));
            add(c, i, floor_div(m(i + 1, c), d));
            if (m(i, c) != 0 || m(i + 1, c) != 0) clean = false;
        }
        if (!clean) continue;
        scale.push_back(1);
        scale.push_back(d);
        i += 2;
    }

    DecompositionZ out;
    out.rank = scale.size();
    out.y = IntMatrix(out.rank, n);
    for (std::size_t r = 0; r < out.rank; ++r)
        for (std::size_t c = 0; c < n; ++c) out.y(r, c) = scale[r] * q(r, c);
    if (gramian(symplectic_z(out.rank / 2), out.y) != a)
        throw Error(ErrorKind::PreconditionFailed, "decompose_skew_Z: round trip failed");
    return out;
}

/// b with A = b b^T (b as a column), for symmetric A of rank 1 with square diagonal.
inline std::vector<Int> rank1_factor(const IntMatrix& a) {
    if (!a.is_symmetric()) throw Rank1Error(Rank1Violation::NotSymmetric, "rank1_factor: matrix is not symmetric");
    if (rank_over_q(a) != 1) throw Rank1Error(Rank1Violation::RankNotOne, "rank1_factor: rank over Q is not 1");
    const std::size_t n = a.rows();
    std::vector<Int> roots(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a(i, i) < 0) throw Rank1Error(Rank1Violation::NonSquareDiagonal, "rank1_factor: negative diagonal entry");
        roots[i] = sqrt(a(i, i));
        if (roots[i] * roots[i] != a(i, i))
            throw Rank1Error(Rank1Violation::NonSquareDiagonal, "rank1_factor: diagonal entry is not a square");
    }
    std::size_t p = 0;
    while (a(p, p) == 0) ++p;  // rank 1 and symmetric: some diagonal entry is nonzero
    std::vector<Int> b(n);
    for (std::size_t j = 0; j < n; ++j) b[j] = a(p, j) / roots[p];
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (b[r] * b[c] != a(r, c)) throw Error(ErrorKind::PreconditionFailed, "rank1_factor: round trip failed");
    return b;
}

}  // namespace embed2k

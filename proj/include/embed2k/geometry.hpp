#pragma once

// Linear general position maps K -> R^{2k} in exact arithmetic, and the
// intersection data they induce on pairs of disjoint k-faces.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "embed2k/cochains.hpp"
#include "embed2k/complex.hpp"
#include "embed2k/errors.hpp"
#include "embed2k/integer.hpp"

namespace embed2k {

using Point = std::vector<Rational>;

/// Vertex positions in Q^{2k}; the map is linear on each simplex.
class GeneralPositionMap {
public:
    GeneralPositionMap(int k, std::vector<Vertex> labels, std::vector<Point> coords, std::uint64_t seed = 0)
        : k_(k), labels_(std::move(labels)), coords_(std::move(coords)), seed_(seed) {
        if (labels_.size() != coords_.size()) throw Error(ErrorKind::DimensionMismatch, "one point per vertex required");
        if (!std::is_sorted(labels_.begin(), labels_.end()) ||
            std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end())
            throw Error(ErrorKind::InvalidArgument, "vertex labels must be strictly increasing");
        for (const auto& p : coords_)
            if (static_cast<int>(p.size()) != 2 * k_) throw Error(ErrorKind::DimensionMismatch, "points must lie in R^{2k}");
    }

    int k() const noexcept { return k_; }
    std::uint64_t seed() const noexcept { return seed_; }
    const std::vector<Vertex>& labels() const noexcept { return labels_; }

    const Point& operator()(Vertex v) const {
        auto it = std::lower_bound(labels_.begin(), labels_.end(), v);
        if (it == labels_.end() || *it != v) throw Error(ErrorKind::InvalidArgument, "vertex " + std::to_string(v) + " is not mapped");
        return coords_[static_cast<std::size_t>(it - labels_.begin())];
    }

    /// Curve parameter of each vertex when built by moment_map (empty otherwise).
    std::vector<std::int64_t> parameters;

private:
    int k_;
    std::vector<Vertex> labels_;
    std::vector<Point> coords_;
    std::uint64_t seed_;
};

struct IntersectionRecord {
    std::size_t count = 0;
    std::vector<int> signs;  ///< one +-1 per intersection point

    int algebraic() const {
        int s = 0;
        for (int x : signs) s += x;
        return s;
    }
};

/// Intersection of the images of two vertex-disjoint k-simplices under f.
///
/// Solves sum l_i f(v_i) = sum m_j f(w_j), sum l_i = sum m_j = 1. The simplices
/// meet iff all coordinates are positive; the sign is that of
/// det[f(v_1)-f(v_0), ..., f(v_k)-f(v_0), f(w_1)-f(w_0), ..., f(w_k)-f(w_0)].
inline IntersectionRecord simplex_pair_intersection(const GeneralPositionMap& f, const Face& sigma, const Face& tau) {
    const int k = f.k();
    if (sigma.dimension() != k || tau.dimension() != k)
        throw Error(ErrorKind::InvalidArgument, "simplex_pair_intersection: faces must be k-dimensional");
    if (!sigma.disjoint(tau)) throw Error(ErrorKind::InvalidArgument, "simplex_pair_intersection: faces are adjacent");
    const std::size_t dim = static_cast<std::size_t>(2 * k);
    const std::size_t n = sigma.size();  // k + 1

    RationalMatrix a(dim + 2, std::vector<Rational>(2 * n));
    std::vector<Rational> rhs(dim + 2);
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = f(sigma[i]);
        const Point& q = f(tau[i]);
        for (std::size_t r = 0; r < dim; ++r) {
            a[r][i] = p[r];
            a[r][n + i] = -q[r];
        }
        a[dim][i] = 1;
        a[dim + 1][n + i] = 1;
    }
    rhs[dim] = 1;
    rhs[dim + 1] = 1;
    auto sol = solve_square(a, rhs);
    if (!sol) {
        // Parallel affine hulls that never meet (e.g. parallel chords) stay disjoint under
        // small perturbation; only a consistent singular system is degenerate.
        RationalMatrix augmented = a;
        for (std::size_t r = 0; r < augmented.size(); ++r) augmented[r].push_back(rhs[r]);
        if (rational_rank(augmented) > rational_rank(a)) return {};
        throw Error(ErrorKind::DegenerateConfiguration, "intersection system is singular");
    }
    bool all_positive = true;
    for (const Rational& x : *sol) {
        if (x == 0) throw Error(ErrorKind::DegenerateConfiguration, "intersection on a lower-dimensional face");
        if (x < 0) all_positive = false;
    }
    IntersectionRecord rec;
    if (!all_positive) return rec;

    RationalMatrix frame(dim, std::vector<Rational>(dim));
    for (std::size_t c = 1; c < n; ++c)
        for (std::size_t r = 0; r < dim; ++r) {
            frame[r][c - 1] = f(sigma[c])[r] - f(sigma[0])[r];
            frame[r][k + c - 1] = f(tau[c])[r] - f(tau[0])[r];
        }
    const Rational det = rational_determinant(frame);
    if (det == 0) throw Error(ErrorKind::DegenerateConfiguration, "intersecting simplices are not transversal");
    rec.count = 1;
    rec.signs.push_back(det > 0 ? 1 : -1);
    return rec;
}

/// Crossings of two planar polylines (k = 1 PL arcs), segment by segment.
inline IntersectionRecord polyline_crossings(const std::vector<Point>& a, const std::vector<Point>& b) {
    IntersectionRecord total;
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        for (std::size_t j = 0; j + 1 < b.size(); ++j) {
            GeneralPositionMap f(1, {0, 1, 2, 3}, {a[i], a[i + 1], b[j], b[j + 1]});
            const auto rec = simplex_pair_intersection(f, Face{0, 1}, Face{2, 3});
            total.count += rec.count;
            total.signs.insert(total.signs.end(), rec.signs.begin(), rec.signs.end());
        }
    return total;
}

namespace detail {

inline std::vector<std::int64_t> moment_parameters(std::size_t count, std::uint64_t seed) {
    std::vector<std::int64_t> t(count);
    for (std::size_t i = 0; i < count; ++i) t[i] = static_cast<std::int64_t>(i + 1);
    if (seed == 0) return t;
    // Fisher-Yates on raw mt19937_64 output: reproducible across standard libraries.
    std::mt19937_64 rng(seed);
    for (std::size_t i = count; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(t[i - 1], t[j]);
    }
    return t;
}

inline GeneralPositionMap moment_curve_map(const SimplicialComplex& K, std::uint64_t seed) {
    const auto labels = K.vertices();
    const auto t = moment_parameters(labels.size(), seed);
    std::vector<Point> coords;
    coords.reserve(labels.size());
    for (std::int64_t ti : t) {
        Point p(static_cast<std::size_t>(2 * K.k()));
        Int power = 1;
        for (auto& x : p) {
            power *= ti;
            x = Rational(power);
        }
        coords.push_back(std::move(p));
    }
    GeneralPositionMap f(K.k(), labels, std::move(coords), seed);
    f.parameters = t;
    return f;
}

}  // namespace detail

/// Vertices on the moment curve t -> (t, t^2, ..., t^{2k}).
///
/// Seed 0 places the i-th smallest label at t = i + 1; other seeds permute the
/// parameters. If some disjoint pair is degenerate, the seed is advanced.
inline GeneralPositionMap moment_map(const SimplicialComplex& K, std::uint64_t seed = 0, int max_retries = 64) {
    const auto pairs = nonadjacent_pairs(K);
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        GeneralPositionMap f = detail::moment_curve_map(K, seed + static_cast<std::uint64_t>(attempt));
        try {
            for (const auto& p : pairs) simplex_pair_intersection(f, K.face(p.first), K.face(p.second));
            return f;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateConfiguration) throw;
        }
    }
    throw Error(ErrorKind::DegenerateConfiguration, "no general position moment map within the retry cap");
}

inline Cocycle2 intersection_cocycle2(const SimplicialComplex& K, const GeneralPositionMap& f) {
    const DeletedProduct dp(K);
    Cocycle2 nu{gf2::BitVector(dp.size())};
    for (std::size_t p = 0; p < dp.size(); ++p) {
        const auto& fp = dp.pairs()[p];
        if (simplex_pair_intersection(f, K.face(fp.first), K.face(fp.second)).count % 2 == 1) nu.values.set(p);
    }
    return nu;
}

/// Signed intersection numbers f(sigma).f(tau) on ordered pairs (faces oriented ascending).
inline CocycleZ intersection_cocycle_z(const SimplicialComplex& K, const GeneralPositionMap& f) {
    const DeletedProduct dp(K);
    std::vector<Int> reps(dp.size());
    for (std::size_t p = 0; p < dp.size(); ++p) {
        const auto& fp = dp.pairs()[p];
        reps[p] = simplex_pair_intersection(f, K.face(fp.first), K.face(fp.second)).algebraic();
    }
    // Swapping the two k-column blocks multiplies the determinant by (-1)^{k*k} = (-1)^k.
    return from_representatives(dp, K.k(), reps);
}

}  // namespace embed2k

#pragma once

// Pure simplicial k-complexes, their chain complexes in top degree, and
// maximal k-forests with fundamental ("hat") cycles.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "embed2k/errors.hpp"
#include "embed2k/gf2.hpp"
#include "embed2k/integer.hpp"

namespace embed2k {

using Vertex = std::uint32_t;

enum class Ring { Z2, Z };

inline const char* to_string(Ring r) { return r == Ring::Z2 ? "Z2" : "Z"; }

/// A simplex given by its vertex labels in ascending order.
///
/// The ascending order is the positive orientation.
class Face {
public:
    Face() = default;
    Face(std::initializer_list<Vertex> vs) : Face(std::vector<Vertex>(vs)) {}
    explicit Face(std::vector<Vertex> vs) : vertices_(std::move(vs)) {
        std::sort(vertices_.begin(), vertices_.end());
        if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
            throw Error(ErrorKind::InvalidComplex, "face has a repeated vertex");
    }

    std::size_t size() const noexcept { return vertices_.size(); }
    int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
    Vertex operator[](std::size_t i) const { return vertices_[i]; }
    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    auto begin() const noexcept { return vertices_.begin(); }
    auto end() const noexcept { return vertices_.end(); }

    bool contains(Vertex v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

    bool contains(const Face& sub) const {
        return std::includes(vertices_.begin(), vertices_.end(), sub.vertices_.begin(), sub.vertices_.end());
    }

    bool disjoint(const Face& other) const {
        auto a = vertices_.begin(), b = other.vertices_.begin();
        while (a != vertices_.end() && b != other.vertices_.end()) {
            if (*a == *b) return false;
            if (*a < *b)
                ++a;
            else
                ++b;
        }
        return true;
    }

    /// The codimension-one face obtained by dropping the vertex at position i.
    Face drop(std::size_t i) const {
        Face f;
        f.vertices_ = vertices_;
        f.vertices_.erase(f.vertices_.begin() + static_cast<std::ptrdiff_t>(i));
        return f;
    }

    friend auto operator<=>(const Face&, const Face&) = default;
    friend bool operator==(const Face&, const Face&) = default;

private:
    std::vector<Vertex> vertices_;
};

/// Incidence number [tau : alpha] for an oriented (k-1)-face alpha given as an
/// ordered vertex list. Zero when alpha is not a facet of tau.
inline int incidence_sign(const Face& tau, const std::vector<Vertex>& alpha) {
    if (alpha.size() + 1 != tau.size())
        throw Error(ErrorKind::InvalidArgument, "incidence_sign: alpha must have exactly one vertex fewer than tau");
    std::vector<Vertex> sorted = alpha;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error(ErrorKind::InvalidArgument, "incidence_sign: alpha has a repeated vertex");
    if (!std::includes(tau.begin(), tau.end(), sorted.begin(), sorted.end())) return 0;
    std::size_t dropped = 0;
    while (dropped < sorted.size() && sorted[dropped] == tau[dropped]) ++dropped;
    // Parity of the permutation taking the ascending order to alpha's order.
    int inversions = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (std::size_t j = i + 1; j < alpha.size(); ++j)
            if (alpha[i] > alpha[j]) ++inversions;
    const int base = (dropped % 2 == 0) ? 1 : -1;
    return (inversions % 2 == 0) ? base : -base;
}

inline int incidence_sign(const Face& tau, const Face& alpha) { return incidence_sign(tau, alpha.vertices()); }

/// A pure k-complex determined by its k-faces.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    SimplicialComplex(int k, std::vector<Face> faces) : k_(k), faces_(std::move(faces)) {
        if (k_ < 1) throw Error(ErrorKind::InvalidComplex, "dimension k must be at least 1");
        for (const Face& f : faces_)
            if (f.dimension() != k_)
                throw Error(ErrorKind::InvalidComplex,
                            "face of dimension " + std::to_string(f.dimension()) + " in a " + std::to_string(k_) +
                                "-complex (only pure complexes are supported)");
        std::sort(faces_.begin(), faces_.end());
        faces_.erase(std::unique(faces_.begin(), faces_.end()), faces_.end());
        for (const Face& f : faces_)
            for (std::size_t i = 0; i < f.size(); ++i) facets_.push_back(f.drop(i));
        std::sort(facets_.begin(), facets_.end());
        facets_.erase(std::unique(facets_.begin(), facets_.end()), facets_.end());
    }

    int k() const noexcept { return k_; }
    std::size_t size() const noexcept { return faces_.size(); }
    bool empty() const noexcept { return faces_.empty(); }
    const std::vector<Face>& faces() const noexcept { return faces_; }
    const Face& face(std::size_t i) const { return faces_[i]; }

    /// The (k-1)-faces, sorted.
    const std::vector<Face>& facets() const noexcept { return facets_; }

    std::optional<std::size_t> index_of(const Face& f) const {
        auto it = std::lower_bound(faces_.begin(), faces_.end(), f);
        if (it == faces_.end() || *it != f) return std::nullopt;
        return static_cast<std::size_t>(it - faces_.begin());
    }

    std::optional<std::size_t> facet_index(const Face& f) const {
        auto it = std::lower_bound(facets_.begin(), facets_.end(), f);
        if (it == facets_.end() || *it != f) return std::nullopt;
        return static_cast<std::size_t>(it - facets_.begin());
    }

    std::vector<Vertex> vertices() const {
        std::vector<Vertex> vs;
        for (const Face& f : faces_) vs.insert(vs.end(), f.begin(), f.end());
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }

    std::optional<Vertex> max_vertex() const {
        std::optional<Vertex> m;
        for (const Face& f : faces_)
            if (!m || f.vertices().back() > *m) m = f.vertices().back();
        return m;
    }

    friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

private:
    int k_ = 1;
    std::vector<Face> faces_;
    std::vector<Face> facets_;
};

inline SimplicialComplex complex_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("k") || !j.contains("faces"))
        throw Error(ErrorKind::Parse, "complex JSON must be an object with \"k\" and \"faces\"");
    if (!j["k"].is_number_integer()) throw Error(ErrorKind::Parse, "\"k\" must be an integer");
    const int k = j["k"].get<int>();
    if (!j["faces"].is_array()) throw Error(ErrorKind::Parse, "\"faces\" must be an array");
    std::vector<Face> faces;
    for (const auto& jf : j["faces"]) {
        if (!jf.is_array()) throw Error(ErrorKind::Parse, "each face must be an array of vertex labels");
        std::vector<Vertex> vs;
        for (const auto& jv : jf) {
            if (!jv.is_number_integer() || jv.get<long long>() < 0)
                throw Error(ErrorKind::Parse, "vertex labels must be non-negative integers");
            vs.push_back(static_cast<Vertex>(jv.get<long long>()));
        }
        if (static_cast<int>(vs.size()) != k + 1)
            throw Error(ErrorKind::InvalidComplex, "face arity " + std::to_string(vs.size()) + " differs from k+1 = " +
                                                       std::to_string(k + 1));
        faces.emplace_back(std::move(vs));
    }
    return SimplicialComplex(k, std::move(faces));
}

inline SimplicialComplex parse_complex(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
    }
    return complex_from_json(j);
}

inline nlohmann::json to_json(const SimplicialComplex& K) {
    nlohmann::json faces = nlohmann::json::array();
    for (const Face& f : K.faces()) faces.push_back(f.vertices());
    return {{"k", K.k()}, {"faces", faces}};
}

/// Unordered pair of k-face indices, first < second.
struct FacePair {
    std::size_t first;
    std::size_t second;
    friend auto operator<=>(const FacePair&, const FacePair&) = default;
};

/// All pairs of vertex-disjoint k-faces in lexicographic order (the set K*).
inline std::vector<FacePair> nonadjacent_pairs(const SimplicialComplex& K) {
    std::vector<FacePair> pairs;
    for (std::size_t i = 0; i < K.size(); ++i)
        for (std::size_t j = i + 1; j < K.size(); ++j)
            if (K.face(i).disjoint(K.face(j))) pairs.push_back({i, j});
    return pairs;
}

inline gf2::BitMatrix boundary_matrix_z2(const SimplicialComplex& K) {
    gf2::BitMatrix d(K.facets().size(), K.size());
    for (std::size_t c = 0; c < K.size(); ++c)
        for (std::size_t i = 0; i < K.face(c).size(); ++i) d.set(*K.facet_index(K.face(c).drop(i)), c);
    return d;
}

inline IntMatrix boundary_matrix_z(const SimplicialComplex& K) {
    IntMatrix d(K.facets().size(), K.size());
    for (std::size_t c = 0; c < K.size(); ++c)
        for (std::size_t i = 0; i < K.face(c).size(); ++i)
            d(*K.facet_index(K.face(c).drop(i)), c) = (i % 2 == 0) ? 1 : -1;
    return d;
}

/// Basis of the k-cycles over GF(2); since K is k-dimensional this is H_k(K; Z2).
inline std::vector<gf2::BitVector> cycle_space_z2(const SimplicialComplex& K) {
    return gf2::nullspace(boundary_matrix_z2(K));
}

/// Lattice basis of the integer k-cycles, i.e. of H_k(K; Z).
inline std::vector<std::vector<Int>> cycle_space_z(const SimplicialComplex& K) {
    return integer_kernel(boundary_matrix_z(K));
}

/// A maximal k-forest T and the hat cycles of the faces outside it.
///
/// For Z2 the hats are sets of faces; for Z they are primitive integer cycles
/// with coefficient +1 on their defining face.
struct ForestData {
    Ring ring = Ring::Z2;
    std::vector<bool> in_forest;            ///< indexed by face
    std::vector<std::size_t> non_forest;    ///< face indices outside T, ascending
    std::vector<gf2::BitVector> hat2;       ///< per face; zero on forest faces (Z2 forests)
    std::vector<std::vector<Int>> hat_z;    ///< per face; zero on forest faces (Z forests)

    std::size_t betti() const noexcept { return non_forest.size(); }

    /// Position of a non-forest face in the homology basis, if any.
    std::optional<std::size_t> basis_index(std::size_t face) const {
        auto it = std::lower_bound(non_forest.begin(), non_forest.end(), face);
        if (it == non_forest.end() || *it != face) return std::nullopt;
        return static_cast<std::size_t>(it - non_forest.begin());
    }
};

/// Greedy maximal k-forest. Faces are scanned in `order` (canonical order by
/// default); a face joins T iff its boundary is independent of those already in T.
inline ForestData maximal_k_forest(const SimplicialComplex& K, Ring ring,
                                   std::optional<std::vector<std::size_t>> order = std::nullopt) {
    const std::size_t n = K.size();
    std::vector<std::size_t> scan(n);
    if (order) {
        scan = *order;
        std::vector<std::size_t> check = scan;
        std::sort(check.begin(), check.end());
        std::vector<std::size_t> iota(n);
        std::iota(iota.begin(), iota.end(), 0);
        if (check != iota) throw Error(ErrorKind::InvalidArgument, "forest order must be a permutation of the faces");
    } else {
        std::iota(scan.begin(), scan.end(), 0);
    }

    ForestData out;
    out.ring = ring;
    out.in_forest.assign(n, false);

    if (ring == Ring::Z2) {
        const gf2::BitMatrix d = boundary_matrix_z2(K);
        gf2::EchelonBasis span(d.rows(), n);
        out.hat2.assign(n, gf2::BitVector(n));
        std::vector<std::size_t> dependent;
        for (std::size_t f : scan) {
            gf2::BitVector col = d.column(f);
            auto red = span.reduce(col);
            if (red.residual.any()) {
                span.insert(std::move(col), f);
                out.in_forest[f] = true;
            } else {
                dependent.push_back(f);
            }
        }
        // Hats are computed against the final forest: the boundary of a
        // dependent face is a sum of forest boundaries, found by reduction.
        for (std::size_t f : dependent) {
            auto red = span.reduce(d.column(f));
            gf2::BitVector hat = red.combination;
            hat.set(f);
            out.hat2[f] = std::move(hat);
        }
        std::sort(dependent.begin(), dependent.end());
        out.non_forest = std::move(dependent);
        return out;
    }

    const IntMatrix d = boundary_matrix_z(K);
    LatticeEchelon span(d.rows(), 1);
    std::vector<std::size_t> forest, dependent;
    for (std::size_t f : scan) {
        const std::size_t before = span.rank();
        span.insert(d.column(f), 0);
        if (span.rank() > before) {
            out.in_forest[f] = true;
            forest.push_back(f);
        } else {
            dependent.push_back(f);
        }
    }
    std::sort(forest.begin(), forest.end());
    out.hat_z.assign(n, std::vector<Int>(n));
    for (std::size_t f : dependent) {
        // Kernel of [d_T | d_f] is one-dimensional; its primitive generator is the hat.
        IntMatrix sub(d.rows(), forest.size() + 1);
        for (std::size_t r = 0; r < d.rows(); ++r) {
            for (std::size_t c = 0; c < forest.size(); ++c) sub(r, c) = d(r, forest[c]);
            sub(r, forest.size()) = d(r, f);
        }
        auto kernel = integer_kernel(sub);
        if (kernel.size() != 1) throw Error(ErrorKind::InvalidArgument, "forest hat kernel is not one-dimensional");
        std::vector<Int> gen = kernel.front();
        Int lead = gen.back();
        if (lead < 0) {
            for (auto& x : gen) x = -x;
            lead = -lead;
        }
        if (lead != 1)
            throw Error(ErrorKind::NonUnitHat, "integer hat cycle of face " + std::to_string(f) +
                                                   " has coefficient " + lead.str() + " on its face");
        auto& hat = out.hat_z[f];
        for (std::size_t c = 0; c < forest.size(); ++c) hat[forest[c]] = gen[c];
        hat[f] = 1;
    }
    std::sort(dependent.begin(), dependent.end());
    out.non_forest = std::move(dependent);
    return out;
}

/// K ⊔ L with L's labels shifted past K's largest label.
inline SimplicialComplex disjoint_union(const SimplicialComplex& K, const SimplicialComplex& L) {
    if (K.k() != L.k()) throw Error(ErrorKind::InvalidComplex, "disjoint_union: dimension mismatch");
    const auto top = K.max_vertex();
    const Vertex shift = top ? *top + 1 : 0;
    std::vector<Face> faces = K.faces();
    for (const Face& f : L.faces()) {
        std::vector<Vertex> vs = f.vertices();
        for (auto& v : vs) v += shift;
        faces.emplace_back(std::move(vs));
    }
    return SimplicialComplex(K.k(), std::move(faces));
}

// Standard complexes.

/// The k-skeleton of the simplex on vertices 0..n-1.
inline SimplicialComplex simplex_skeleton(int k, Vertex n) {
    std::vector<Face> faces;
    std::vector<Vertex> current;
    auto rec = [&](auto&& self, Vertex start) -> void {
        if (static_cast<int>(current.size()) == k + 1) {
            faces.emplace_back(current);
            return;
        }
        for (Vertex v = start; v < n; ++v) {
            current.push_back(v);
            self(self, v + 1);
            current.pop_back();
        }
    };
    rec(rec, 0);
    return SimplicialComplex(k, std::move(faces));
}

inline SimplicialComplex complete_graph(Vertex n) { return simplex_skeleton(1, n); }

inline SimplicialComplex complete_bipartite(Vertex a, Vertex b) {
    std::vector<Face> faces;
    for (Vertex i = 0; i < a; ++i)
        for (Vertex j = 0; j < b; ++j) faces.push_back(Face{i, a + j});
    return SimplicialComplex(1, std::move(faces));
}

inline SimplicialComplex graph(std::vector<std::pair<Vertex, Vertex>> edges) {
    std::vector<Face> faces;
    for (auto [u, v] : edges) faces.push_back(Face{u, v});
    return SimplicialComplex(1, std::move(faces));
}

}  // namespace embed2k

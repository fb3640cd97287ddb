#pragma once

// Elementary coboundaries, cohomology of cocycles on the deleted product,
// 2k-cycles of K*, C-van Kampen numbers and the cocycles omega(psi).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "embed2k/cochains.hpp"
#include "embed2k/complex.hpp"
#include "embed2k/errors.hpp"
#include "embed2k/geometry.hpp"
#include "embed2k/gf2.hpp"
#include "embed2k/integer.hpp"

namespace embed2k {

/// One term c * delta(alpha, sigma) of a coboundary sum; alpha is oriented ascending.
struct CoboundaryTerm {
    Face alpha;
    Face sigma;
    Int coefficient;
    friend bool operator==(const CoboundaryTerm&, const CoboundaryTerm&) = default;
};

using CoboundaryWitness = std::vector<CoboundaryTerm>;

namespace detail {

inline void require_elementary(const SimplicialComplex& K, const Face& alpha, const Face& sigma) {
    if (alpha.dimension() != K.k() - 1 || !K.facet_index(alpha))
        throw Error(ErrorKind::InvalidArgument, "alpha must be a (k-1)-face of K");
    if (!K.index_of(sigma)) throw Error(ErrorKind::InvalidArgument, "sigma must be a k-face of K");
    if (sigma.contains(alpha)) throw Error(ErrorKind::InvalidArgument, "alpha lies in the boundary of sigma");
}

}  // namespace detail

/// delta(alpha, sigma): the pairs {sigma, tau} in K* with tau containing alpha.
inline Cocycle2 elementary_coboundary2(const SimplicialComplex& K, const DeletedProduct& dp, const Face& alpha,
                                       const Face& sigma) {
    detail::require_elementary(K, alpha, sigma);
    const std::size_t s = *K.index_of(sigma);
    Cocycle2 out{gf2::BitVector(dp.size())};
    for (std::size_t t = 0; t < K.size(); ++t) {
        if (!K.face(t).contains(alpha)) continue;
        if (auto p = dp.index(s, t)) out.values.set(*p);
    }
    return out;
}

inline Cocycle2 elementary_coboundary2(const SimplicialComplex& K, const Face& alpha, const Face& sigma) {
    return elementary_coboundary2(K, DeletedProduct(K), alpha, sigma);
}

/// Integer delta(alpha, sigma): (-1)^k [tau:alpha] on (sigma, tau) and [tau:alpha] on (tau, sigma).
inline CocycleZ elementary_coboundary_z(const SimplicialComplex& K, const DeletedProduct& dp,
                                        const std::vector<Vertex>& alpha, const Face& sigma) {
    detail::require_elementary(K, Face(alpha), sigma);
    const std::size_t s = *K.index_of(sigma);
    const int parity = (K.k() % 2 == 0) ? 1 : -1;
    CocycleZ out{std::vector<Int>(dp.ordered_size())};
    for (std::size_t t = 0; t < K.size(); ++t) {
        const int inc = incidence_sign(K.face(t), alpha);
        if (inc == 0 || !dp.index(s, t)) continue;
        out.values[*dp.ordered_index(s, t)] = parity * inc;
        out.values[*dp.ordered_index(t, s)] = inc;
    }
    return out;
}

inline CocycleZ elementary_coboundary_z(const SimplicialComplex& K, const std::vector<Vertex>& alpha, const Face& sigma) {
    return elementary_coboundary_z(K, DeletedProduct(K), alpha, sigma);
}

/// The nonzero elementary coboundaries of K, as (facet index, face index) pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> coboundary_generators(const SimplicialComplex& K,
                                                                             const DeletedProduct& dp) {
    std::vector<std::pair<std::size_t, std::size_t>> gens;
    std::vector<std::vector<std::size_t>> cofaces(K.facets().size());
    for (std::size_t t = 0; t < K.size(); ++t)
        for (std::size_t i = 0; i < K.face(t).size(); ++i) cofaces[*K.facet_index(K.face(t).drop(i))].push_back(t);
    for (std::size_t a = 0; a < K.facets().size(); ++a)
        for (std::size_t s = 0; s < K.size(); ++s) {
            if (K.face(s).contains(K.facets()[a])) continue;
            bool nonzero = false;
            for (std::size_t t : cofaces[a])
                if (dp.index(s, t)) {
                    nonzero = true;
                    break;
                }
            if (nonzero) gens.emplace_back(a, s);
        }
    return gens;
}

/// Span of the mod-2 elementary coboundaries of K, reduced once.
///
/// Membership tests return a witness; the annihilator of the span is the space
/// of 2k-cycles of K*.
class CoboundarySpace2 {
public:
    explicit CoboundarySpace2(const SimplicialComplex& K)
        : K_(K), dp_(K), generators_(coboundary_generators(K, dp_)), span_(dp_.size(), std::max<std::size_t>(generators_.size(), 1)) {
        for (std::size_t g = 0; g < generators_.size(); ++g) span_.insert(generator_vector(g), g);
    }

    const DeletedProduct& deleted_product() const noexcept { return dp_; }
    std::size_t rank() const noexcept { return span_.rank(); }
    std::size_t generator_count() const noexcept { return generators_.size(); }

    gf2::BitVector generator_vector(std::size_t g) const {
        const auto [a, s] = generators_[g];
        return elementary_coboundary2(K_, dp_, K_.facets()[a], K_.face(s)).values;
    }

    /// Witness terms when c lies in the span.
    std::optional<CoboundaryWitness> decompose(const Cocycle2& c) const {
        if (c.size() != dp_.size()) throw Error(ErrorKind::DimensionMismatch, "cocycle length differs from |K*|");
        auto red = span_.reduce(c.values);
        if (red.residual.any()) return std::nullopt;
        CoboundaryWitness w;
        if (generators_.empty()) return w;
        for (std::size_t g : red.combination.support())
            w.push_back({K_.facets()[generators_[g].first], K_.face(generators_[g].second), Int(1)});
        return w;
    }

    bool contains(const Cocycle2& c) const { return span_.contains(c.values); }

    /// Basis of the 2k-cycles C of K* (vectors orthogonal to every coboundary).
    std::vector<gf2::BitVector> cycle_basis() const {
        gf2::BitMatrix m(0, dp_.size());
        for (const auto& v : span_.basis()) m.push_row(v);
        return gf2::nullspace(std::move(m));
    }

private:
    SimplicialComplex K_;
    DeletedProduct dp_;
    std::vector<std::pair<std::size_t, std::size_t>> generators_;
    gf2::EchelonBasis span_;
};

/// Lattice spanned by the integer elementary coboundaries, in representative coordinates.
class CoboundarySpaceZ {
public:
    explicit CoboundarySpaceZ(const SimplicialComplex& K)
        : K_(K), dp_(K), generators_(coboundary_generators(K, dp_)), span_(dp_.size(), std::max<std::size_t>(generators_.size(), 1)) {
        for (std::size_t g = 0; g < generators_.size(); ++g) span_.insert(generator_reps(g), g);
    }

    const DeletedProduct& deleted_product() const noexcept { return dp_; }
    int k() const noexcept { return K_.k(); }
    std::size_t generator_count() const noexcept { return generators_.size(); }
    const std::vector<std::pair<std::size_t, std::size_t>>& generators() const noexcept { return generators_; }

    std::vector<Int> generator_reps(std::size_t g) const {
        const auto [a, s] = generators_[g];
        return representatives(dp_, elementary_coboundary_z(K_, dp_, K_.facets()[a].vertices(), K_.face(s)));
    }

    std::optional<CoboundaryWitness> decompose(const CocycleZ& c) const {
        if (c.size() != dp_.ordered_size()) throw Error(ErrorKind::DimensionMismatch, "cocycle length differs from |K~|");
        if (!is_super_symmetric(dp_, K_.k(), c))
            throw Error(ErrorKind::InvalidArgument, "integer cocycle is not super-symmetric");
        auto red = span_.reduce(representatives(dp_, c));
        if (!red.member) return std::nullopt;
        CoboundaryWitness w;
        for (std::size_t g = 0; g < generators_.size(); ++g)
            if (red.combination[g] != 0)
                w.push_back({K_.facets()[generators_[g].first], K_.face(generators_[g].second), red.combination[g]});
        return w;
    }

    /// Membership on representative coordinates, without witness bookkeeping.
    bool contains_reps(const std::vector<Int>& reps) const { return span_.reduce(reps).member; }

    const LatticeEchelon& lattice() const noexcept { return span_; }

private:
    SimplicialComplex K_;
    DeletedProduct dp_;
    std::vector<std::pair<std::size_t, std::size_t>> generators_;
    LatticeEchelon span_;
};

struct CohomologyResult {
    bool cohomologous = false;
    CoboundaryWitness witness;  ///< nu - nu' = sum of terms, when cohomologous
};

inline CohomologyResult cohomologous2(const CoboundarySpace2& space, const Cocycle2& nu, const Cocycle2& nu2) {
    auto w = space.decompose(Cocycle2{nu.values ^ nu2.values});
    if (!w) return {};
    return {true, std::move(*w)};
}

inline CohomologyResult cohomologous2(const SimplicialComplex& K, const Cocycle2& nu, const Cocycle2& nu2) {
    return cohomologous2(CoboundarySpace2(K), nu, nu2);
}

inline CohomologyResult cohomologous_z(const CoboundarySpaceZ& space, const CocycleZ& nu, const CocycleZ& nu2) {
    if (nu.size() != nu2.size()) throw Error(ErrorKind::DimensionMismatch, "cocycle lengths differ");
    const auto& dp = space.deleted_product();
    if (!is_super_symmetric(dp, 0, nu) && !is_super_symmetric(dp, 1, nu)) {
        // fall through: decompose() reports the precise failure for K's parity
    }
    CocycleZ diff{nu.values};
    for (std::size_t i = 0; i < diff.size(); ++i) diff.values[i] -= nu2.values[i];
    auto w = space.decompose(diff);
    if (!w) return {};
    return {true, std::move(*w)};
}

inline CohomologyResult cohomologous_z(const SimplicialComplex& K, const CocycleZ& nu, const CocycleZ& nu2) {
    return cohomologous_z(CoboundarySpaceZ(K), nu, nu2);
}

/// Recomputes sum of the witness terms and compares it with the claimed difference.
inline bool verify_witness2(const SimplicialComplex& K, const Cocycle2& nu, const Cocycle2& nu2, const CoboundaryWitness& w) {
    const DeletedProduct dp(K);
    gf2::BitVector sum(dp.size());
    for (const auto& t : w)
        if (t.coefficient % 2 != 0) sum ^= elementary_coboundary2(K, dp, t.alpha, t.sigma).values;
    return sum == (nu.values ^ nu2.values);
}

inline bool verify_witness_z(const SimplicialComplex& K, const CocycleZ& nu, const CocycleZ& nu2, const CoboundaryWitness& w) {
    const DeletedProduct dp(K);
    std::vector<Int> sum(dp.ordered_size());
    for (const auto& t : w) {
        const auto d = elementary_coboundary_z(K, dp, t.alpha.vertices(), t.sigma);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += t.coefficient * d.values[i];
    }
    for (std::size_t i = 0; i < sum.size(); ++i)
        if (sum[i] != nu.values[i] - nu2.values[i]) return false;
    return true;
}

struct VanKampenResult {
    bool trivial = false;
    Cocycle2 nu;
    CoboundaryWitness witness;  ///< nu = sum of witness terms when trivial
};

/// Whether the van Kampen class [nu(f)] of K vanishes, f a moment-curve map.
inline VanKampenResult van_kampen(const SimplicialComplex& K, std::uint64_t seed = 0) {
    VanKampenResult r;
    r.nu = intersection_cocycle2(K, moment_map(K, seed));
    const CoboundarySpace2 space(K);
    if (auto w = space.decompose(r.nu)) {
        r.trivial = true;
        r.witness = std::move(*w);
    }
    return r;
}

inline bool van_kampen_trivial(const SimplicialComplex& K, std::uint64_t seed = 0) { return van_kampen(K, seed).trivial; }

// 2k-cycles of K*.

/// Basis of the 2k-cycles C in K*: for every k-face sigma and (k-1)-face a,
/// an even number of tau containing a have {sigma, tau} in C.
inline std::vector<gf2::BitVector> two_k_cycle_space(const SimplicialComplex& K) {
    return CoboundarySpace2(K).cycle_basis();
}

/// Direct check of the 2k-cycle condition.
inline bool is_two_k_cycle(const SimplicialComplex& K, const gf2::BitVector& C) {
    const DeletedProduct dp(K);
    if (C.size() != dp.size()) throw Error(ErrorKind::DimensionMismatch, "subset length differs from |K*|");
    for (std::size_t s = 0; s < K.size(); ++s)
        for (const Face& a : K.facets()) {
            std::size_t count = 0;
            for (std::size_t t = 0; t < K.size(); ++t)
                if (K.face(t).contains(a))
                    if (auto p = dp.index(s, t); p && C.get(*p)) ++count;
            if (count % 2 != 0) return false;
        }
    return true;
}

/// [alpha x beta]: pairs {sigma, tau} in K* with sigma in alpha, tau in beta,
/// excluding pairs with both faces in alpha ∩ beta. Cycles are face indicator vectors.
inline gf2::BitVector product_cycle(const SimplicialComplex& K, const gf2::BitVector& alpha, const gf2::BitVector& beta) {
    const DeletedProduct dp(K);
    gf2::BitVector C(dp.size());
    for (std::size_t p = 0; p < dp.size(); ++p) {
        const auto [s, t] = dp.pairs()[p];
        const bool st = alpha.get(s) && beta.get(t);
        const bool ts = alpha.get(t) && beta.get(s);
        const bool inside = alpha.get(s) && beta.get(s) && alpha.get(t) && beta.get(t);
        if ((st || ts) && !inside) C.set(p);
    }
    return C;
}

/// v_C(K): the parity of crossings of f summed over a 2k-cycle C.
inline bool vc_number(const SimplicialComplex& K, const gf2::BitVector& C, const GeneralPositionMap& f) {
    if (!is_two_k_cycle(K, C)) throw Error(ErrorKind::InvalidArgument, "subset of K* is not a 2k-cycle");
    return intersection_cocycle2(K, f).values.dot(C);
}

inline bool vc_number(const SimplicialComplex& K, const gf2::BitVector& C, std::uint64_t seed = 0) {
    return vc_number(K, C, moment_map(K, seed));
}

// Homomorphisms H_k(K) -> V and the cocycles omega(psi).

/// Images y_sigma = psi(hat sigma) as the columns of an r x n matrix (one per k-face).
inline gf2::BitMatrix hat_assignment2(const ForestData& forest, const gf2::BitMatrix& psi) {
    if (forest.ring != Ring::Z2) throw Error(ErrorKind::RingMismatch, "mod-2 assignment needs a Z2 forest");
    if (psi.cols() != forest.betti()) throw Error(ErrorKind::DimensionMismatch, "psi needs one column per non-forest face");
    const std::size_t n = forest.in_forest.size();
    gf2::BitMatrix y(psi.rows(), n);
    for (std::size_t j = 0; j < forest.betti(); ++j)
        for (std::size_t r = 0; r < psi.rows(); ++r)
            if (psi.get(r, j)) y.set(r, forest.non_forest[j]);
    return y;
}

inline IntMatrix hat_assignment_z(const ForestData& forest, const IntMatrix& psi) {
    if (forest.ring != Ring::Z) throw Error(ErrorKind::RingMismatch, "integer assignment needs a Z forest");
    if (psi.cols() != forest.betti()) throw Error(ErrorKind::DimensionMismatch, "psi needs one column per non-forest face");
    const std::size_t n = forest.in_forest.size();
    IntMatrix y(psi.rows(), n);
    for (std::size_t j = 0; j < forest.betti(); ++j)
        for (std::size_t r = 0; r < psi.rows(); ++r) y(r, forest.non_forest[j]) = psi(r, j);
    return y;
}

/// psi applied to a k-cycle, via cycle = sum of hats of its faces.
inline gf2::BitVector apply_hom2(const ForestData& forest, const gf2::BitMatrix& psi, const gf2::BitVector& cycle) {
    gf2::BitVector out(psi.rows());
    for (std::size_t f : cycle.support())
        if (auto j = forest.basis_index(f)) out ^= psi.column(*j);
    return out;
}

/// Re-expresses psi (given on the hat basis of `from`) on the hat basis of `to`.
inline gf2::BitMatrix transfer_hom2(const ForestData& from, const gf2::BitMatrix& psi, const ForestData& to) {
    gf2::BitMatrix out(psi.rows(), to.betti());
    for (std::size_t j = 0; j < to.betti(); ++j) {
        const auto image = apply_hom2(from, psi, to.hat2[to.non_forest[j]]);
        for (std::size_t r : image.support()) out.set(r, j);
    }
    return out;
}

/// omega(y){sigma, tau} = y_sigma^T I y_tau for an assignment y (columns per face).
inline Cocycle2 omega_from_assignment2(const SimplicialComplex& K, const gf2::BitMatrix& y, const gf2::BitMatrix& form) {
    if (y.cols() != K.size() || form.rows() != y.rows() || form.cols() != y.rows())
        throw Error(ErrorKind::DimensionMismatch, "assignment and form sizes do not match");
    const DeletedProduct dp(K);
    const gf2::BitMatrix yt = y.transpose();  // row per face
    std::vector<gf2::BitVector> iy(K.size());
    for (std::size_t f = 0; f < K.size(); ++f) iy[f] = form * yt.row(f);
    Cocycle2 out{gf2::BitVector(dp.size())};
    for (std::size_t p = 0; p < dp.size(); ++p) {
        const auto [s, t] = dp.pairs()[p];
        if (yt.row(s).dot(iy[t])) out.values.set(p);
    }
    return out;
}

inline Cocycle2 omega2(const SimplicialComplex& K, const ForestData& forest, const gf2::BitMatrix& psi,
                       const gf2::BitMatrix& form) {
    if (psi.rows() != form.rows()) throw Error(ErrorKind::DimensionMismatch, "psi rows must match the form size");
    return omega_from_assignment2(K, hat_assignment2(forest, psi), form);
}

/// omega_Z(y)(sigma, tau) = y_sigma^T I y_tau on every ordered pair.
inline CocycleZ omega_from_assignment_z(const SimplicialComplex& K, const IntMatrix& y, const IntMatrix& form) {
    if (y.cols() != K.size() || form.rows() != y.rows() || form.cols() != y.rows())
        throw Error(ErrorKind::DimensionMismatch, "assignment and form sizes do not match");
    const DeletedProduct dp(K);
    const IntMatrix gram = y.transpose() * form * y;
    CocycleZ out{std::vector<Int>(dp.ordered_size())};
    for (std::size_t i = 0; i < dp.ordered_size(); ++i) {
        const auto& op = dp.ordered()[i];
        out.values[i] = gram(op.first, op.second);
    }
    return out;
}

inline CocycleZ omega_z(const SimplicialComplex& K, const ForestData& forest, const IntMatrix& psi, const IntMatrix& form) {
    if (psi.rows() != form.rows()) throw Error(ErrorKind::DimensionMismatch, "psi rows must match the form size");
    return omega_from_assignment_z(K, hat_assignment_z(forest, psi), form);
}

}  // namespace embed2k

#pragma once

// Index sets of the deleted product and the cochain value types on them.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "embed2k/complex.hpp"
#include "embed2k/gf2.hpp"
#include "embed2k/integer.hpp"

namespace embed2k {

/// Ordered pair of k-face indices (sigma, tau), sigma != tau.
struct OrderedPair {
    std::size_t first;
    std::size_t second;
    friend auto operator<=>(const OrderedPair&, const OrderedPair&) = default;
};

/// Canonical coordinates for cochains on K (unordered pairs, K*) and on the
/// ordered pairs (K~). Both lists are lexicographic in face indices.
class DeletedProduct {
public:
    explicit DeletedProduct(const SimplicialComplex& K) : pairs_(nonadjacent_pairs(K)) {
        ordered_.reserve(2 * pairs_.size());
        for (const auto& p : pairs_) {
            ordered_.push_back({p.first, p.second});
            ordered_.push_back({p.second, p.first});
        }
        std::sort(ordered_.begin(), ordered_.end());
    }

    std::size_t size() const noexcept { return pairs_.size(); }
    std::size_t ordered_size() const noexcept { return ordered_.size(); }
    const std::vector<FacePair>& pairs() const noexcept { return pairs_; }
    const std::vector<OrderedPair>& ordered() const noexcept { return ordered_; }

    std::optional<std::size_t> index(std::size_t a, std::size_t b) const {
        if (a > b) std::swap(a, b);
        const FacePair key{a, b};
        auto it = std::lower_bound(pairs_.begin(), pairs_.end(), key);
        if (it == pairs_.end() || *it != key) return std::nullopt;
        return static_cast<std::size_t>(it - pairs_.begin());
    }

    std::optional<std::size_t> ordered_index(std::size_t a, std::size_t b) const {
        const OrderedPair key{a, b};
        auto it = std::lower_bound(ordered_.begin(), ordered_.end(), key);
        if (it == ordered_.end() || *it != key) return std::nullopt;
        return static_cast<std::size_t>(it - ordered_.begin());
    }

private:
    std::vector<FacePair> pairs_;
    std::vector<OrderedPair> ordered_;
};

/// A mod-2 cochain K* -> Z2 in canonical pair order.
struct Cocycle2 {
    gf2::BitVector values;

    std::size_t size() const noexcept { return values.size(); }
    bool is_zero() const { return values.none(); }
    friend bool operator==(const Cocycle2&, const Cocycle2&) = default;
};

/// An integer cochain on ordered nonadjacent pairs, in canonical ordered-pair order.
struct CocycleZ {
    std::vector<Int> values;

    std::size_t size() const noexcept { return values.size(); }
    bool is_zero() const {
        return std::all_of(values.begin(), values.end(), [](const Int& v) { return v == 0; });
    }
    friend bool operator==(const CocycleZ&, const CocycleZ&) = default;
};

/// value(sigma, tau) == (-1)^k value(tau, sigma) for every ordered pair.
inline bool is_super_symmetric(const DeletedProduct& dp, int k, const CocycleZ& c) {
    if (c.size() != dp.ordered_size()) return false;
    for (std::size_t i = 0; i < dp.ordered_size(); ++i) {
        const auto& op = dp.ordered()[i];
        if (op.first > op.second) continue;
        const std::size_t j = *dp.ordered_index(op.second, op.first);
        if (c.values[i] != ((k % 2 == 0) ? c.values[j] : Int(-c.values[j]))) return false;
    }
    return true;
}

inline Cocycle2 reduce_mod2(const DeletedProduct& dp, const CocycleZ& c) {
    Cocycle2 out{gf2::BitVector(dp.size())};
    for (std::size_t p = 0; p < dp.size(); ++p) {
        const auto& fp = dp.pairs()[p];
        if (c.values[*dp.ordered_index(fp.first, fp.second)] % 2 != 0) out.values.set(p);
    }
    return out;
}

/// Restriction of a super-symmetric cocycle to representatives (sigma, tau), sigma < tau,
/// indexed like K*. Super-symmetric cocycles are determined by these values.
inline std::vector<Int> representatives(const DeletedProduct& dp, const CocycleZ& c) {
    std::vector<Int> out(dp.size());
    for (std::size_t p = 0; p < dp.size(); ++p) {
        const auto& fp = dp.pairs()[p];
        out[p] = c.values[*dp.ordered_index(fp.first, fp.second)];
    }
    return out;
}

/// Inverse of representatives().
inline CocycleZ from_representatives(const DeletedProduct& dp, int k, const std::vector<Int>& reps) {
    CocycleZ c{std::vector<Int>(dp.ordered_size())};
    for (std::size_t p = 0; p < dp.size(); ++p) {
        const auto& fp = dp.pairs()[p];
        c.values[*dp.ordered_index(fp.first, fp.second)] = reps[p];
        c.values[*dp.ordered_index(fp.second, fp.first)] = (k % 2 == 0) ? reps[p] : Int(-reps[p]);
    }
    return c;
}

}  // namespace embed2k

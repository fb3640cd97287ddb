#pragma once

// Random instance generators and independent oracles shared by the test suites.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "embed2k/complex.hpp"
#include "embed2k/gf2.hpp"
#include "embed2k/integer.hpp"

namespace testsupport {

using namespace embed2k;

inline gf2::BitMatrix random_bits(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    gf2::BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (rng() & 1) m.set(r, c);
    return m;
}

inline gf2::BitMatrix random_symmetric_bits(std::mt19937_64& rng, std::size_t n) {
    gf2::BitMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r; c < n; ++c)
            if (rng() & 1) {
                m.set(r, c);
                m.set(c, r);
            }
    return m;
}

inline IntMatrix random_ints(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lim) {
    std::uniform_int_distribution<long> d(-lim, lim);
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = d(rng);
    return m;
}

inline IntMatrix random_skew(std::mt19937_64& rng, std::size_t n, long lim) {
    std::uniform_int_distribution<long> d(-lim, lim);
    IntMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r + 1; c < n; ++c) {
            m(r, c) = d(rng);
            m(c, r) = -m(r, c);
        }
    return m;
}

// Planar graphs with a certified straight-line drawing.

struct Drawing {
    std::vector<std::pair<long long, long long>> points;
    std::vector<std::pair<Vertex, Vertex>> edges;
};

inline int orient(std::pair<long long, long long> a, std::pair<long long, long long> b, std::pair<long long, long long> c) {
    const __int128 v = static_cast<__int128>(b.first - a.first) * (c.second - a.second) -
                       static_cast<__int128>(b.second - a.second) * (c.first - a.first);
    return v > 0 ? 1 : v < 0 ? -1 : 0;
}

/// Whether segments pq and rs share a point other than a common endpoint.
inline bool segments_meet(std::pair<long long, long long> p, std::pair<long long, long long> q, std::pair<long long, long long> r,
                          std::pair<long long, long long> s) {
    const int o1 = orient(p, q, r), o2 = orient(p, q, s), o3 = orient(r, s, p), o4 = orient(r, s, q);
    if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
    auto on = [](auto a, auto b, auto c) {  // c on segment ab, given collinear
        return std::min(a.first, b.first) <= c.first && c.first <= std::max(a.first, b.first) &&
               std::min(a.second, b.second) <= c.second && c.second <= std::max(a.second, b.second);
    };
    if (o1 == 0 && on(p, q, r)) return true;
    if (o2 == 0 && on(p, q, s)) return true;
    if (o3 == 0 && on(r, s, p)) return true;
    if (o4 == 0 && on(r, s, q)) return true;
    return false;
}

/// Independent planarity certificate: no two vertex-disjoint edges of the drawing meet,
/// and edges sharing a vertex meet only there.
inline bool drawing_is_plane(const Drawing& d) {
    for (std::size_t i = 0; i < d.edges.size(); ++i)
        for (std::size_t j = i + 1; j < d.edges.size(); ++j) {
            auto [a, b] = d.edges[i];
            auto [c, e] = d.edges[j];
            const bool share = a == c || a == e || b == c || b == e;
            if (!share) {
                if (segments_meet(d.points[a], d.points[b], d.points[c], d.points[e])) return false;
            } else {
                // adjacent edges: only collinear overlap is a problem
                Vertex common = (a == c || a == e) ? a : b;
                Vertex x = a == common ? b : a;
                Vertex y = c == common ? e : c;
                if (orient(d.points[common], d.points[x], d.points[y]) == 0) {
                    auto dot = (d.points[x].first - d.points[common].first) * (d.points[y].first - d.points[common].first) +
                               (d.points[x].second - d.points[common].second) * (d.points[y].second - d.points[common].second);
                    if (dot > 0) return false;
                }
            }
        }
    return true;
}

/// Random stacked triangulation drawn with integer coordinates, then a random
/// edge subset (isolated vertices dropped by construction of the complex).
inline Drawing random_planar_drawing(std::mt19937_64& rng, std::size_t vertices, double keep) {
    Drawing d;
    d.points = {{0, 0}, {1'000'000'000, 0}, {0, 1'000'000'000}};
    std::vector<std::array<Vertex, 3>> triangles{{0, 1, 2}};
    std::set<std::pair<Vertex, Vertex>> edges{{0, 1}, {0, 2}, {1, 2}};
    std::uniform_int_distribution<int> w(1, 1000);
    while (d.points.size() < vertices) {
        const std::size_t t = rng() % triangles.size();
        const auto tri = triangles[t];
        const long long a = w(rng), b = w(rng), c = w(rng);
        const long long s = a + b + c;
        const auto& p = d.points[tri[0]];
        const auto& q = d.points[tri[1]];
        const auto& r = d.points[tri[2]];
        const std::pair<long long, long long> x{(a * p.first + b * q.first + c * r.first) / s,
                                                (a * p.second + b * q.second + c * r.second) / s};
        const Vertex v = static_cast<Vertex>(d.points.size());
        d.points.push_back(x);
        triangles.erase(triangles.begin() + static_cast<std::ptrdiff_t>(t));
        triangles.push_back({tri[0], tri[1], v});
        triangles.push_back({tri[1], tri[2], v});
        triangles.push_back({tri[0], tri[2], v});
        for (Vertex u : tri) edges.insert({u, v});
    }
    std::bernoulli_distribution coin(keep);
    for (auto e : edges)
        if (coin(rng)) d.edges.push_back(e);
    if (d.edges.empty()) d.edges.push_back(*edges.begin());
    return d;
}

inline SimplicialComplex graph_of(const std::vector<std::pair<Vertex, Vertex>>& edges) { return graph(edges); }

/// Random graph on `vertices` with each edge present with probability p (at least one edge).
inline SimplicialComplex random_graph(std::mt19937_64& rng, Vertex vertices, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex a = 0; a < vertices; ++a)
        for (Vertex b = a + 1; b < vertices; ++b)
            if (coin(rng)) edges.emplace_back(a, b);
    if (edges.empty()) edges.emplace_back(0, 1);
    return graph(edges);
}

/// Random pure 2-complex: `count` distinct triangles on `vertices` labels.
inline SimplicialComplex random_2complex(std::mt19937_64& rng, Vertex vertices, std::size_t count) {
    std::vector<Face> all;
    for (Vertex a = 0; a < vertices; ++a)
        for (Vertex b = a + 1; b < vertices; ++b)
            for (Vertex c = b + 1; c < vertices; ++c) all.push_back(Face{a, b, c});
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min(count, all.size()));
    return SimplicialComplex(2, all);
}

/// Every labelled graph with at most `max_edges` edges on vertex set {0..vertices-1},
/// skipping the empty graph.
inline std::vector<SimplicialComplex> all_small_graphs(Vertex vertices, std::size_t max_edges) {
    std::vector<std::pair<Vertex, Vertex>> pool;
    for (Vertex a = 0; a < vertices; ++a)
        for (Vertex b = a + 1; b < vertices; ++b) pool.emplace_back(a, b);
    std::vector<SimplicialComplex> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << pool.size()); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) > max_edges) continue;
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (std::size_t i = 0; i < pool.size(); ++i)
            if ((mask >> i) & 1) edges.push_back(pool[i]);
        out.push_back(graph(edges));
    }
    return out;
}

}  // namespace testsupport

#include <catch_amalgamated.hpp>

#include <random>

#include "embed2k/complex.hpp"
#include "support.hpp"

using namespace embed2k;

namespace {

/// Binomial coefficient, for Betti numbers of simplex skeleta.
std::size_t choose(std::size_t n, std::size_t r) {
    std::size_t c = 1;
    for (std::size_t i = 0; i < r; ++i) c = c * (n - i) / (i + 1);
    return c;
}

std::size_t brute_disjoint_pairs(const SimplicialComplex& K) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < K.size(); ++i)
        for (std::size_t j = i + 1; j < K.size(); ++j) {
            bool share = false;
            for (Vertex v : K.face(i))
                for (Vertex w : K.face(j)) share = share || v == w;
            if (!share) ++count;
        }
    return count;
}

}  // namespace

TEST_CASE("parse_complex examples") {
    const auto path = parse_complex(R"({"k":1,"faces":[[0,1],[1,2]]})");
    CHECK(path.k() == 1);
    CHECK(path.size() == 2);

    std::string k5 = R"({"k":1,"faces":[)";
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b) k5 += "[" + std::to_string(a) + "," + std::to_string(b) + "],";
    k5.back() = ']';
    k5 += "}";
    CHECK(parse_complex(k5) == complete_graph(5));

    std::string all_triples = R"({"k":2,"faces":[)";
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            for (int c = b + 1; c < 6; ++c)
                all_triples += "[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "],";
    all_triples.back() = ']';
    all_triples += "}";
    const auto triples = parse_complex(all_triples);
    CHECK(triples.size() == 20);
    CHECK(triples == simplex_skeleton(2, 6));
}

TEST_CASE("parse_complex normalizes and rejects bad input") {
    const auto k = parse_complex(R"({"k":1,"faces":[[2,1],[1,2],[0,1]]})");
    CHECK(k.size() == 2);
    CHECK(k.face(1) == Face{1, 2});

    auto kind_of = [](const std::string& text) {
        try {
            parse_complex(text);
        } catch (const Error& e) {
            return e.kind();
        }
        FAIL("no error raised");
        return ErrorKind::Parse;
    };
    CHECK(kind_of("{not json") == ErrorKind::Parse);
    CHECK(kind_of(R"({"k":1})") == ErrorKind::Parse);
    CHECK(kind_of(R"({"k":1,"faces":[[0,1,2]]})") == ErrorKind::InvalidComplex);
    CHECK(kind_of(R"({"k":1,"faces":[[0,0]]})") == ErrorKind::InvalidComplex);
    CHECK(kind_of(R"({"k":1,"faces":[[0,-1]]})") == ErrorKind::Parse);
    CHECK(kind_of(R"({"k":0,"faces":[[0]]})") == ErrorKind::InvalidComplex);
    CHECK(parse_complex(to_json(complete_graph(4)).dump()) == complete_graph(4));
}

TEST_CASE("nonadjacent pairs") {
    CHECK(nonadjacent_pairs(graph({{0, 1}, {1, 2}})).empty());
    CHECK(nonadjacent_pairs(complete_graph(5)).size() == 15);
    const auto six = simplex_skeleton(2, 6);
    CHECK(nonadjacent_pairs(six).size() == brute_disjoint_pairs(six));
    CHECK(nonadjacent_pairs(six).size() == 10);
    const auto d26 = simplex_skeleton(2, 7);
    CHECK(nonadjacent_pairs(d26).size() == brute_disjoint_pairs(d26));
    CHECK(nonadjacent_pairs(d26).size() == 70);

    const auto pairs = nonadjacent_pairs(complete_graph(5));
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i) CHECK(pairs[i] < pairs[i + 1]);
    for (const auto& p : pairs) CHECK(p.first < p.second);
}

TEST_CASE("incidence signs") {
    CHECK(incidence_sign(Face{0, 1}, std::vector<Vertex>{1}) == 1);
    CHECK(incidence_sign(Face{0, 1}, std::vector<Vertex>{0}) == -1);
    CHECK(incidence_sign(Face{0, 1, 2}, std::vector<Vertex>{0, 1}) == 1);
    CHECK(incidence_sign(Face{0, 1, 2}, std::vector<Vertex>{0, 2}) == -1);
    CHECK(incidence_sign(Face{0, 1, 2}, std::vector<Vertex>{1, 2}) == 1);
    CHECK(incidence_sign(Face{0, 1, 2}, std::vector<Vertex>{0, 3}) == 0);
    // an odd permutation of alpha flips the sign
    CHECK(incidence_sign(Face{0, 1, 2}, std::vector<Vertex>{1, 0}) == -1);
    CHECK(incidence_sign(Face{0, 1, 2, 3}, std::vector<Vertex>{3, 1, 2}) == -incidence_sign(Face{0, 1, 2, 3}, std::vector<Vertex>{1, 3, 2}));
    CHECK_THROWS_AS(incidence_sign(Face{0, 1, 2}, std::vector<Vertex>{0}), Error);
}

TEST_CASE("boundary matrices") {
    const auto triangle = graph({{0, 1}, {1, 2}, {0, 2}});
    const auto d = boundary_matrix_z2(triangle);
    CHECK(d.rows() == 3);
    CHECK(d.cols() == 3);
    CHECK(gf2::rank(d) == 2);
    CHECK(gf2::rank(boundary_matrix_z2(complete_graph(5))) == 4);
    const auto single = SimplicialComplex(2, {Face{0, 1, 2}});
    const auto dz = boundary_matrix_z(single);
    CHECK(dz.rows() == 3);
    for (std::size_t r = 0; r < 3; ++r) CHECK(dz(r, 0) != 0);
    // boundary of boundary vanishes for the 3-simplex viewed through its 2-skeleton
    const auto tet = simplex_skeleton(2, 4);
    const auto d2 = boundary_matrix_z(tet);
    std::vector<Int> sphere(tet.size());
    for (std::size_t i = 0; i < tet.size(); ++i) sphere[i] = (i % 2 == 0) ? 1 : -1;  // faces 012,013,023,123
    for (const auto& x : d2 * sphere) CHECK(x == 0);
}

TEST_CASE("cycle spaces") {
    CHECK(cycle_space_z2(complete_graph(5)).size() == 6);
    CHECK(cycle_space_z(complete_graph(5)).size() == 6);
    CHECK(cycle_space_z2(graph({{0, 1}, {1, 2}, {1, 3}})).empty());
    CHECK(cycle_space_z(graph({{0, 1}, {1, 2}, {1, 3}})).empty());
    const auto d26 = simplex_skeleton(2, 7);
    CHECK(cycle_space_z2(d26).size() == d26.size() - gf2::rank(boundary_matrix_z2(d26)));
    CHECK(cycle_space_z2(d26).size() == choose(6, 3));
    for (const auto& c : cycle_space_z2(d26)) CHECK((boundary_matrix_z2(d26) * c).none());
}

TEST_CASE("maximal forests and hats") {
    const auto k5 = complete_graph(5);
    const auto f = maximal_k_forest(k5, Ring::Z2);
    std::vector<Face> forest;
    for (std::size_t i = 0; i < k5.size(); ++i)
        if (f.in_forest[i]) forest.push_back(k5.face(i));
    CHECK(forest == std::vector<Face>{Face{0, 1}, Face{0, 2}, Face{0, 3}, Face{0, 4}});
    CHECK(f.betti() == 6);

    const auto triangle = graph({{0, 1}, {1, 2}, {0, 2}});
    const auto order = std::vector<std::size_t>{*triangle.index_of(Face{0, 1}), *triangle.index_of(Face{1, 2}),
                                                *triangle.index_of(Face{0, 2})};
    const auto ft = maximal_k_forest(triangle, Ring::Z2, order);
    const std::size_t hat_face = *triangle.index_of(Face{0, 2});
    CHECK_FALSE(ft.in_forest[hat_face]);
    CHECK(ft.hat2[hat_face].count() == 3);

    const auto two = disjoint_union(k5, k5);
    CHECK(maximal_k_forest(two, Ring::Z2).betti() == 12);
    CHECK(maximal_k_forest(two, Ring::Z).betti() == 12);
}

TEST_CASE("forest invariants on random complexes") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 40; ++trial) {
        const SimplicialComplex K = trial % 2 == 0 ? testsupport::random_graph(rng, 7, 0.5)
                                                   : testsupport::random_2complex(rng, 7, 4 + rng() % 12);
        for (Ring ring : {Ring::Z2, Ring::Z}) {
            const auto f = maximal_k_forest(K, ring);
            CHECK(f.betti() == cycle_space_z2(K).size());
            if (ring == Ring::Z2) {
                const auto d = boundary_matrix_z2(K);
                for (std::size_t s = 0; s < K.size(); ++s) {
                    CHECK((d * f.hat2[s]).none());
                    for (std::size_t t : f.hat2[s].support()) CHECK((f.in_forest[t] || t == s));
                    if (!f.in_forest[s]) CHECK(f.hat2[s].get(s));
                    else CHECK(f.hat2[s].none());
                }
                // every cycle is the sum of the hats of its faces
                for (const auto& c : cycle_space_z2(K)) {
                    gf2::BitVector sum(K.size());
                    for (std::size_t s : c.support()) sum ^= f.hat2[s];
                    CHECK(sum == c);
                }
            } else {
                const auto d = boundary_matrix_z(K);
                for (std::size_t s = 0; s < K.size(); ++s) {
                    for (const auto& x : d * f.hat_z[s]) CHECK(x == 0);
                    if (!f.in_forest[s]) CHECK(f.hat_z[s][s] == 1);
                }
            }
        }
    }
}

TEST_CASE("disjoint union") {
    const auto k5 = complete_graph(5);
    const auto two = disjoint_union(k5, k5);
    CHECK(two.size() == 20);
    CHECK(disjoint_union(k5, SimplicialComplex(1, {})) == k5);
    const auto k33 = complete_bipartite(3, 3);
    const auto mixed = disjoint_union(k5, k33);
    CHECK(mixed.size() == k5.size() + k33.size());
    CHECK(cycle_space_z2(mixed).size() == cycle_space_z2(k5).size() + cycle_space_z2(k33).size());
    CHECK_THROWS_AS(disjoint_union(k5, simplex_skeleton(2, 4)), Error);
}

namespace {

/// Disk whose boundary runs `degree` times around the loop 0-1-2, with fresh
/// interior vertices from `next` on.
void wrapped_disk(std::vector<Face>& faces, int degree, Vertex& next) {
    const std::size_t len = static_cast<std::size_t>(3 * degree);
    std::vector<Vertex> ring(len);
    for (auto& u : ring) u = next++;
    const Vertex centre = next++;
    for (std::size_t i = 0; i < len; ++i) {
        const Vertex b0 = static_cast<Vertex>(i % 3), b1 = static_cast<Vertex>((i + 1) % 3);
        const Vertex u0 = ring[i], u1 = ring[(i + 1) % len];
        faces.push_back(Face{b0, b1, u0});
        faces.push_back(Face{b1, u0, u1});
        faces.push_back(Face{u0, u1, centre});
    }
}

}  // namespace

TEST_CASE("integer hats with a non-unit coefficient") {
    std::vector<Face> faces;
    Vertex next = 3;
    wrapped_disk(faces, 2, next);
    const Face last = faces.front();  // a face of the degree-2 disk
    wrapped_disk(faces, 4, next);
    const SimplicialComplex K(2, faces);
    // the only integer 2-cycle is 2 * (degree-2 disk) - (degree-4 disk)
    CHECK(cycle_space_z(K).size() == 1);
    // mod 2 each disk is a cycle on its own
    CHECK(maximal_k_forest(K, Ring::Z2).betti() == 2);

    std::vector<std::size_t> order;
    const std::size_t special = *K.index_of(last);
    for (std::size_t i = 0; i < K.size(); ++i)
        if (i != special) order.push_back(i);
    order.push_back(special);
    try {
        maximal_k_forest(K, Ring::Z, order);
        FAIL("expected NonUnitHat");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonUnitHat);
    }
    // scanning a face of the degree-4 disk last gives a unit hat instead
    std::vector<std::size_t> unit_order;
    std::size_t outer = K.size();
    for (std::size_t i = 0; i < K.size(); ++i) {
        if (outer == K.size() && K.face(i).vertices().back() == next - 1) outer = i;
        else unit_order.push_back(i);
    }
    unit_order.push_back(outer);
    const auto f = maximal_k_forest(K, Ring::Z, unit_order);
    CHECK(f.betti() == 1);
    CHECK(f.hat_z[outer][outer] == 1);
}

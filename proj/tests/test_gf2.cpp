#include <catch_amalgamated.hpp>

#include <random>

#include "embed2k/gf2.hpp"
#include "support.hpp"

using namespace embed2k;
using embed2k::gf2::BitMatrix;
using embed2k::gf2::BitVector;

TEST_CASE("BitVector basic operations across word boundaries") {
    BitVector v(130);
    CHECK(v.none());
    v.set(0);
    v.set(64);
    v.set(129);
    CHECK(v.count() == 3);
    CHECK(v.first() == 0);
    CHECK(v.next(1) == 64);
    CHECK(v.next(65) == 129);
    CHECK(v.next(130) == 130);
    CHECK(v.last() == 129);
    CHECK(v.support() == std::vector<std::size_t>{0, 64, 129});
    v.flip(64);
    CHECK_FALSE(v.get(64));
    BitVector w(130);
    w.set(129);
    CHECK(v.dot(w));
    w.set(0);
    CHECK_FALSE(v.dot(w));
    v ^= w;
    CHECK(v.none());
}

TEST_CASE("rank, nullspace and solve agree on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 12;
        const BitMatrix a = testsupport::random_bits(rng, rows, cols);
        const std::size_t rk = gf2::rank(a);
        const auto kernel = gf2::nullspace(a);
        CHECK(kernel.size() == cols - rk);
        for (const auto& v : kernel) CHECK((a * v).none());
        CHECK(gf2::rank(a.transpose()) == rk);
        // Solve for a right side known to be in the image.
        BitVector x(cols);
        for (std::size_t i = 0; i < cols; ++i)
            if (rng() & 1) x.set(i);
        const BitVector b = a * x;
        const auto sol = gf2::solve(a, b);
        REQUIRE(sol);
        CHECK(a * *sol == b);
    }
}

TEST_CASE("solve reports inconsistent systems") {
    BitMatrix a(2, 1);
    a.set(0, 0);
    a.set(1, 0);
    BitVector b(2);
    b.set(0);
    CHECK_FALSE(gf2::solve(a, b).has_value());
}

TEST_CASE("inverse of random invertible matrices") {
    std::mt19937_64 rng(11);
    int done = 0;
    while (done < 30) {
        const std::size_t n = 1 + rng() % 10;
        const BitMatrix a = testsupport::random_bits(rng, n, n);
        if (gf2::rank(a) != n) continue;
        CHECK(a * gf2::inverse(a) == BitMatrix::identity(n));
        ++done;
    }
}

TEST_CASE("EchelonBasis combinations reproduce the reduced vector") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = 1 + rng() % 20, gens = 1 + rng() % 15;
        const BitMatrix g = testsupport::random_bits(rng, gens, dim);
        gf2::EchelonBasis basis(dim, gens);
        for (std::size_t i = 0; i < gens; ++i) basis.insert(g.row(i), i);
        CHECK(basis.rank() == gf2::rank(g));
        BitVector v(dim);
        for (std::size_t i = 0; i < dim; ++i)
            if (rng() & 1) v.set(i);
        const auto red = basis.reduce(v);
        BitVector sum(dim);
        for (std::size_t i : red.combination.support()) sum ^= g.row(i);
        CHECK((sum ^ red.residual) == v);
        // residual is zero exactly for members of the row space
        BitMatrix ext = g;
        ext.push_row(v);
        CHECK(red.residual.none() == (gf2::rank(ext) == gf2::rank(g)));
    }
}

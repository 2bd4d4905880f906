#include <catch2/catch_amalgamated.hpp>

#include "tenzeta/matrix.hpp"
#include "tenzeta/qbinom.hpp"
#include "tenzeta/subspace.hpp"

#include <random>
#include <set>

using namespace tenzeta;

namespace {

MatrixGF random_matrix(const Field& f, size_t rows, size_t cols, std::mt19937_64& rng) {
    MatrixGF m(f, rows, cols);
    std::uniform_int_distribution<unsigned long> dist(0, f.q() - 1);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) m.set(r, c, static_cast<gf_t>(dist(rng)));
    return m;
}

Subspace random_subspace(const Field& f, size_t ambient, size_t gens, std::mt19937_64& rng) {
    return Subspace::span(random_matrix(f, gens, ambient, rng));
}

// generic-only rref, bypassing the packed GF(2) kernel, for cross-checking
MatrixGF rref_generic_gf2(const MatrixGF& m) {
    const Field& f = m.field();
    MatrixGF red = m;
    size_t rank = 0;
    for (size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        size_t sel = rank;
        while (sel < m.rows() && red.at(sel, c) == 0) ++sel;
        if (sel == m.rows()) continue;
        for (size_t j = 0; j < m.cols(); ++j) {
            gf_t t = red.at(rank, j);
            red.set(rank, j, red.at(sel, j));
            red.set(sel, j, t);
        }
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == rank || red.at(i, c) == 0) continue;
            for (size_t j = 0; j < m.cols(); ++j) red.set(i, j, f.sub(red.at(i, j), red.at(rank, j)));
        }
        ++rank;
    }
    return red;
}

}  // namespace

TEST_CASE("field arithmetic: prime and extension fields") {
    for (unsigned long q : {2ul, 3ul, 5ul, 4ul, 9ul, 8ul}) {
        Field f(q);
        REQUIRE(f.q() == q);
        // field axioms by exhaustion
        for (gf_t a = 0; a < q; ++a) {
            CHECK(f.add(a, 0) == a);
            CHECK(f.mul(a, 1) == a);
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
            for (gf_t b = 0; b < q; ++b) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                for (gf_t c = 0; c < q && q <= 8; ++c) {
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                    CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                }
            }
        }
    }
    CHECK_THROWS(Field(6));
    CHECK_THROWS(Field(1));
    // explicit modulus: x^2 + x + 1 over F_2
    Field gf4(2, 2, {1, 1, 1});
    CHECK(gf4.q() == 4);
    CHECK_THROWS(Field(2, 2, {1, 0, 1}));  // x^2 + 1 = (x+1)^2 is reducible
}

TEST_CASE("rref: canonical form, idempotence, rank") {
    std::mt19937_64 rng(42);
    for (unsigned long q : {2ul, 3ul, 4ul}) {
        Field f(q);
        MatrixGF id = MatrixGF::identity(f, 5);
        RrefResult r = rref(id);
        CHECK(r.reduced == id);
        CHECK(r.rank == 5);
        MatrixGF zero(f, 3, 4);
        CHECK(rref(zero).rank == 0);
        for (int it = 0; it < 50; ++it) {
            MatrixGF m = random_matrix(f, 4, 6, rng);
            RrefResult r1 = rref(m);
            RrefResult r2 = rref(r1.reduced);
            CHECK(r1.reduced == r2.reduced);
            CHECK(r1.rank == r2.rank);
        }
    }
}

TEST_CASE("GF(2) packed kernel matches the generic path") {
    std::mt19937_64 rng(7);
    Field f(2);
    for (int it = 0; it < 200; ++it) {
        MatrixGF m = random_matrix(f, 6, 10, rng);
        MatrixGF fast = rref(m).reduced;      // packed path (cols <= 64)
        MatrixGF slow = rref_generic_gf2(m);  // generic elimination
        REQUIRE(fast == slow);
    }
}

TEST_CASE("nullspace") {
    Field f(2);
    std::mt19937_64 rng(11);
    MatrixGF id = MatrixGF::identity(f, 6);
    CHECK(nullspace(id).rows() == 0);
    for (int it = 0; it < 100; ++it) {
        MatrixGF m = random_matrix(f, 5, 9, rng);
        MatrixGF ns = nullspace(m);
        CHECK(ns.rows() + rank_of(m) == 9);
        // every kernel row is annihilated
        for (size_t r = 0; r < ns.rows(); ++r)
            for (size_t i = 0; i < m.rows(); ++i) {
                gf_t acc = 0;
                for (size_t c = 0; c < 9; ++c) acc = f.add(acc, f.mul(m.at(i, c), ns.at(r, c)));
                REQUIRE(acc == 0);
            }
    }
}

TEST_CASE("subspace sum, intersection and duality laws") {
    Field f(2);
    // <e1> and <e1+e2> in F_2^2
    MatrixGF a(f, 1, 2, {1, 0});
    MatrixGF b(f, 1, 2, {1, 1});
    Subspace u = Subspace::span(a), v = Subspace::span(b);
    CHECK(intersect(u, v).dim() == 0);
    CHECK(sum(u, v).is_full());

    std::mt19937_64 rng(3);
    for (int it = 0; it < 100; ++it) {
        Subspace x = random_subspace(f, 8, 4, rng);
        Subspace y = random_subspace(f, 8, 3, rng);
        CHECK(intersect(x, x) == x);
        CHECK(sum(x, x) == x);
        // modularity of dimensions
        CHECK(intersect(x, y).dim() + sum(x, y).dim() == x.dim() + y.dim());
        // (X cap Y)-perp = X-perp + Y-perp
        CHECK(intersect(x, y).orthogonal() == sum(x.orthogonal(), y.orthogonal()));
        // order relations
        CHECK(x.leq(sum(x, y)));
        CHECK(intersect(x, y).leq(x));
        CHECK(x.contains(std::vector<gf_t>(8, 0)));
        CHECK(x.leq(x));
    }
    for (unsigned long q : {3ul, 4ul}) {
        Field fq(q);
        for (int it = 0; it < 30; ++it) {
            Subspace x = random_subspace(fq, 5, 3, rng);
            Subspace y = random_subspace(fq, 5, 2, rng);
            CHECK(intersect(x, y).dim() + sum(x, y).dim() == x.dim() + y.dim());
            CHECK(intersect(x, y).orthogonal() == sum(x.orthogonal(), y.orthogonal()));
        }
    }
}

TEST_CASE("subspace enumeration counts match Gaussian binomials") {
    for (unsigned long q : {2ul, 3ul}) {
        Field f(q);
        for (size_t m = 0; m <= 6; ++m) {
            for (size_t d = 0; d <= m; ++d) {
                std::set<Subspace> seen;
                long long count = 0;
                enumerate_subspaces(m, d, f, [&](const Subspace& s) {
                    ++count;
                    CHECK(s.dim() == d);
                    seen.insert(s);
                });
                Int expect = qbin(static_cast<long>(m), static_cast<long>(d), q);
                REQUIRE(int_of(count) == expect);
                REQUIRE(int_of(static_cast<long long>(seen.size())) == expect);  // no duplicates
            }
        }
    }
    // m=4, d=2, q=2 -> 35; m=3, q=2, all dims -> 16
    long long c42 = 0;
    enumerate_subspaces(4, 2, Field(2), [&](const Subspace&) { ++c42; });
    CHECK(c42 == 35);
    CHECK(all_subspaces(3, Field(2)).size() == 16);
}

TEST_CASE("enumeration yields the zero subspace exactly once at d=0") {
    int count = 0;
    enumerate_subspaces(5, 0, Field(3), [&](const Subspace& s) {
        ++count;
        CHECK(s.is_zero());
    });
    CHECK(count == 1);
}

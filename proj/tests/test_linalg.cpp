#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfcyc/errors.hpp"
#include "hopfcyc/linalg.hpp"

#include <random>

using namespace hopfcyc;

namespace {

SparseMat randomMat(Ring ring, int rows, int cols, std::mt19937& rng) {
    std::uniform_int_distribution<int> val(-3, 3);
    std::uniform_int_distribution<int> fill(0, 3);
    SparseMat m = SparseMat::zero(ring, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (fill(rng) == 0) m.set(i, j, Scalar::fromInt(ring, val(rng)));
    return m;
}

} // namespace

TEST_CASE("echelon rank and kernel over Q") {
    Ring R = Ring::rationals();
    SparseMat m = SparseMat::zero(R, 2, 3);
    // [1 2 3; 2 4 6] -> rank 1, kernel dim 2
    m.set(0, 0, Scalar::fromInt(R, 1));
    m.set(0, 1, Scalar::fromInt(R, 2));
    m.set(0, 2, Scalar::fromInt(R, 3));
    m.set(1, 0, Scalar::fromInt(R, 2));
    m.set(1, 1, Scalar::fromInt(R, 4));
    m.set(1, 2, Scalar::fromInt(R, 6));
    CHECK(rank(m) == 1);
    auto ker = kernelBasis(m);
    REQUIRE(ker.size() == 2);
    for (const auto& v : ker) CHECK(m.apply(v).empty());
}

TEST_CASE("rank-nullity on random matrices over Q and Q(q)") {
    std::mt19937 rng(77);
    for (Ring R : {Ring::rationals(), Ring::functionField()}) {
        for (int trial = 0; trial < 25; ++trial) {
            SparseMat m = randomMat(R, 5, 7, rng);
            int r = rank(m);
            auto ker = kernelBasis(m);
            CHECK(r + static_cast<int>(ker.size()) == 7);
            for (const auto& v : ker) CHECK(m.apply(v).empty());
            CHECK(rank(m.transposed()) == r);
        }
    }
}

TEST_CASE("solve and inverse") {
    std::mt19937 rng(123);
    Ring R = Ring::rationals();
    for (int trial = 0; trial < 20; ++trial) {
        SparseMat m = randomMat(R, 4, 4, rng);
        SparseVec x;
        x.emplace(0, Scalar::fromInt(R, 2));
        x.emplace(3, Scalar::fromInt(R, -1));
        SparseVec b;
        for (const auto& [i, c] : m.apply(x)) b.emplace(i, c);
        auto sol = solve(m, b);
        REQUIRE(sol.has_value());
        CHECK(m.apply(*sol) == b);
        if (isInvertible(m)) {
            SparseMat inv = inverseMatrix(m);
            CHECK(inv * m == SparseMat::identity(R, 4));
            CHECK(m * inv == SparseMat::identity(R, 4));
        }
    }
    // inconsistent system
    SparseMat z = SparseMat::zero(R, 2, 2);
    SparseVec b;
    b.emplace(0, Scalar::one(R));
    CHECK(!solve(z, b).has_value());
}

TEST_CASE("quotient space") {
    Ring R = Ring::rationals();
    // ambient dim 3, relation e0 - e1 = 0 -> quotient dim 2
    SparseVec rel;
    rel.emplace(0, Scalar::one(R));
    rel.emplace(1, Scalar::fromInt(R, -1));
    QuotientSpace q(R, 3, {rel});
    CHECK(q.dim() == 2);
    SparseVec v0, v1;
    v0.emplace(0, Scalar::one(R));
    v1.emplace(1, Scalar::one(R));
    CHECK(q.reduce(v0) == q.reduce(v1));
    CHECK(!q.reduce(v0).empty());
    CHECK(q.reduce(sparseAdd(v0, sparseScale(v1, Scalar::fromInt(R, -1)))).empty());
}

TEST_CASE("subspace coordinates") {
    Ring R = Ring::functionField();
    Scalar q = Scalar::varPower(R, 1);
    SparseVec a, b;
    a.emplace(0, Scalar::one(R));
    a.emplace(1, q);
    b.emplace(2, Scalar::one(R));
    SubSpace s(R, 3, {a, b});
    CHECK(s.dim() == 2);
    SparseVec v = sparseAdd(sparseScale(a, q), sparseScale(b, q + Scalar::one(R)));
    CHECK(s.contains(v));
    auto c = s.coords(v);
    REQUIRE(c.has_value());
    // reconstruct
    SparseVec rec;
    for (const auto& [i, ci] : *c) sparseAxpy(rec, ci, s.basisVector(i));
    CHECK(rec == v);
    SparseVec out;
    out.emplace(1, Scalar::one(R));
    CHECK(!s.contains(out));
    CHECK(!s.coords(out).has_value());
}

TEST_CASE("series ring elimination") {
    Ring S = Ring::series(3);
    Scalar h = Scalar::varPower(S, 1);
    // unit pivots fine
    SparseMat m = SparseMat::zero(S, 2, 2);
    m.set(0, 0, Scalar::one(S) + h);
    m.set(1, 1, Scalar::one(S));
    CHECK(rank(m) == 2);
    // h-only column refuses plain elimination
    SparseMat t = SparseMat::zero(S, 1, 1);
    t.set(0, 0, h);
    CHECK_THROWS_AS(rank(t), NotInvertibleError);
    // Smith-style elementary divisors
    SparseMat s = SparseMat::zero(S, 2, 3);
    s.set(0, 0, h);
    s.set(0, 1, h * h);
    s.set(1, 1, h * h);
    auto div = seriesElementaryDivisors(s);
    REQUIRE(div.size() == 2);
    CHECK(div[0] == 1);
    CHECK(div[1] == 2);
    // a unit entry gives divisor h^0
    SparseMat u = SparseMat::zero(S, 1, 2);
    u.set(0, 0, Scalar::one(S) + h);
    u.set(0, 1, h);
    auto du = seriesElementaryDivisors(u);
    REQUIRE(du.size() == 1);
    CHECK(du[0] == 0);
}

TEST_CASE("rank invariant under row and column permutation") {
    std::mt19937 rng(5150);
    Ring R = Ring::functionField();
    SparseMat m = randomMat(R, 6, 6, rng);
    int r = rank(m);
    std::vector<int> perm{3, 1, 4, 0, 5, 2};
    SparseMat p = SparseMat::zero(R, 6, 6);
    for (int i = 0; i < 6; ++i)
        for (const auto& [j, c] : m.row[perm[i]]) p.row[i].emplace(perm[j], c);
    CHECK(rank(p) == r);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfcyc/cyclic.hpp"
#include "hopfcyc/errors.hpp"
#include "hopfcyc/sayd.hpp"

#include <numeric>
#include <random>

using namespace hopfcyc;

namespace {

// Q[t]/(t^2): e0 = 1, e1 = t
ParaCyclicObject dualNumbersObject(int cap) {
    Ring R = Ring::rationals();
    Scalar one = Scalar::one(R);
    std::vector<std::vector<SparseVec>> mult(2, std::vector<SparseVec>(2));
    mult[0][0] = {{0, one}};
    mult[0][1] = {{1, one}};
    mult[1][0] = {{1, one}};
    mult[1][1] = {}; // t^2 = 0
    return cyclicObjectOfAlgebra(R, mult, {{0, one}}, cap);
}

// Chevalley-Eilenberg complex of a Lie algebra with trivial coefficients
ChainComplex ceComplex(const LieAlgebra& g) {
    Ring R = g.ring;
    int n = g.dim;
    // basis of wedge^s: increasing index subsets, ordered lexicographically
    std::vector<std::vector<std::vector<int>>> basis(n + 1);
    std::vector<std::vector<int>> cur;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) s.push_back(i);
        basis[s.size()].push_back(s);
    }
    for (auto& b : basis) std::sort(b.begin(), b.end());
    auto indexOf = [&](int s, const std::vector<int>& v) {
        auto it = std::lower_bound(basis[s].begin(), basis[s].end(), v);
        return static_cast<int>(it - basis[s].begin());
    };
    ChainComplex C;
    C.ring = R;
    C.shift = -1;
    for (int s = 0; s <= n; ++s) C.dims.push_back(static_cast<int>(basis[s].size()));
    for (int s = 0; s <= n; ++s) {
        SparseMat d = SparseMat::zero(R, s >= 1 ? C.dims[s - 1] : 0, C.dims[s]);
        for (size_t col = 0; col < basis[s].size(); ++col) {
            const auto& v = basis[s][col];
            for (int p = 0; p < s; ++p)
                for (int q = p + 1; q < s; ++q) {
                    Scalar sgn = Scalar::fromInt(R, ((p + q) % 2 == 1) ? 1 : -1);
                    for (const auto& [k, c] : g.bracket[v[p]][v[q]]) {
                        std::vector<int> rest;
                        for (int r = 0; r < s; ++r)
                            if (r != p && r != q) rest.push_back(v[r]);
                        // insert k keeping the increasing order, tracking the sign
                        Scalar coeff = sgn * c;
                        bool dup = false;
                        int pos = 0;
                        for (int r : rest) {
                            if (r == k) dup = true;
                            if (r < k) ++pos;
                        }
                        if (dup) continue;
                        if (pos % 2 == 1) coeff = -coeff;
                        rest.insert(rest.begin() + pos, k);
                        int rowI = indexOf(s - 1, rest);
                        d.set(rowI, static_cast<int>(col),
                              d.get(rowI, static_cast<int>(col)) + coeff);
                    }
                }
        }
        C.d.push_back(std::move(d));
    }
    return C;
}

} // namespace

TEST_CASE("point objects verify and have alternating Hochschild boundary") {
    for (Direction dir : {Direction::Cyclic, Direction::Cocyclic}) {
        CAPTURE(directionName(dir));
        ParaCyclicObject X = pointObject(Ring::rationals(), dir, 4);
        auto issues = X.verifyCyclic(4);
        for (const auto& s : issues) CAPTURE(s);
        CHECK(issues.empty());
        for (int n = 1; n <= 4; ++n) {
            SparseMat b = X.hochschildB(n);
            if (n % 2 == 1)
                CHECK(b.isZero());
            else
                CHECK(b == SparseMat::identity(X.ring(), 1));
        }
        // the point object is its own cyclic dual
        ParaCyclicObject D = X.dualCyclic();
        CHECK(D.direction() != dir);
        CHECK(D.verifyCyclic(4).empty());
        for (int n = 1; n <= 4; ++n)
            for (int i = 0; i <= n; ++i) CHECK(D.face(n, i) == X.face(n, i));
    }
}

TEST_CASE("a q-scaled cyclic operator is flagged as paracyclic") {
    Ring R = Ring::functionField();
    ParaCyclicObject X = pointObject(R, Direction::Cyclic, 2);
    SparseMat tq = SparseMat::identity(R, 1).scaled(Scalar::varPower(R, 1));
    X.setCyclic(1, tq);
    auto issues = X.verifyCyclic(2);
    REQUIRE(!issues.empty());
    bool flagged = false;
    for (const auto& s : issues)
        if (s.find("t^2 != id at degree 1 (paracyclic only)") != std::string::npos)
            flagged = true;
    CHECK(flagged);
}

TEST_CASE("cyclic module of the dual numbers") {
    ParaCyclicObject X = dualNumbersObject(4);
    REQUIRE(X.verifyCyclic(4).empty());

    SUBCASE("b, B and their mixed-complex identities") {
        for (int n = 1; n <= 4; ++n)
            if (n >= 2) CHECK((X.hochschildB(n - 1) * X.hochschildB(n)).isZero());
        for (int n = 0; n <= 2; ++n)
            CHECK((X.connesB(n + 1) * X.connesB(n)).isZero());
        for (int n = 1; n <= 3; ++n)
            CHECK((X.hochschildB(n + 1) * X.connesB(n) +
                   X.connesB(n - 1) * X.hochschildB(n))
                      .isZero());
    }

    SUBCASE("Hochschild homology dimensions 2, 1, 1, 1") {
        HomologyReport rep = homology(X.bComplex(4), 0, 3);
        REQUIRE(rep.rows.size() == 4);
        CHECK(rep.rows[0].homologyDim == 2);
        CHECK(rep.rows[1].homologyDim == 1);
        CHECK(rep.rows[2].homologyDim == 1);
        CHECK(rep.rows[3].homologyDim == 1);
        for (const auto& r : rep.rows)
            CHECK(static_cast<int>(r.representatives.size()) == r.homologyDim);
    }

    SUBCASE("cyclic dual is point-like: cohomology dims 1, 0, 0") {
        ParaCyclicObject D = X.dualCyclic();
        CHECK(D.direction() == Direction::Cocyclic);
        auto issues = D.verifyCyclic(4);
        for (const auto& s : issues) CAPTURE(s);
        REQUIRE(issues.empty());
        HomologyReport rep = homology(D.bComplex(4), 0, 2);
        CHECK(rep.rows[0].homologyDim == 1);
        CHECK(rep.rows[1].homologyDim == 0);
        CHECK(rep.rows[2].homologyDim == 0);
    }

    SUBCASE("double dual restores the structure matrices") {
        ParaCyclicObject DD = X.dualCyclic().dualCyclic();
        CHECK(DD.direction() == Direction::Cyclic);
        for (int n = 1; n <= 4; ++n)
            for (int i = 0; i <= n; ++i) CHECK(DD.face(n, i) == X.face(n, i));
        for (int n = 0; n <= 3; ++n)
            for (int j = 0; j <= n; ++j) CHECK(DD.degeneracy(n, j) == X.degeneracy(n, j));
        for (int n = 0; n <= 4; ++n) CHECK(DD.cyclic(n) == X.cyclic(n));
    }

    SUBCASE("cyclic homology of the mixed complex") {
        // HC_0 = A, HC_1 = Omega^1/dA = 0, HC_2 = 2 from the SBI sequence
        HomologyReport rep = homology(X.cyclicTotalComplex(4), 0, 2);
        CHECK(rep.rows[0].homologyDim == 2);
        CHECK(rep.rows[1].homologyDim == 0);
        CHECK(rep.rows[2].homologyDim == 2);
    }
}

TEST_CASE("homology is invariant under basis permutation") {
    ParaCyclicObject X = dualNumbersObject(4);
    ChainComplex C = X.bComplex(4);
    std::mt19937 rng(7);
    // conjugate each degree by a random permutation
    std::vector<std::vector<int>> perms;
    for (int n = 0; n <= C.top(); ++n) {
        std::vector<int> p(C.dims[n]);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        perms.push_back(p);
    }
    ChainComplex P = C;
    for (int n = 1; n <= C.top(); ++n) {
        SparseMat m = SparseMat::zero(C.ring, C.dims[n - 1], C.dims[n]);
        for (int r = 0; r < C.dims[n - 1]; ++r)
            for (const auto& [c, v] : C.d[n].row[r]) m.set(perms[n - 1][r], perms[n][c], v);
        P.d[n] = std::move(m);
    }
    HomologyReport a = homology(C, 0, 3), b = homology(P, 0, 3);
    for (size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].homologyDim == b.rows[i].homologyDim);
        CHECK(a.rows[i].kernelDim == b.rows[i].kernelDim);
    }
}

TEST_CASE("requesting homology beyond the realized window fails") {
    ParaCyclicObject X = dualNumbersObject(2);
    ChainComplex C = X.bComplex(2);
    CHECK_THROWS_AS(homology(C, 0, 2), WindowTooSmallError);
    CHECK_NOTHROW(homology(C, 0, 1));
}

TEST_CASE("Chevalley-Eilenberg homology of sl2 is 1, 0, 0, 1") {
    ChainComplex C = ceComplex(LieAlgebra::sl2(Ring::rationals()));
    CHECK(C.checkSquares().empty());
    // pad with a zero incoming differential above the top degree
    C.dims.push_back(0);
    C.d.push_back(SparseMat::zero(C.ring, C.dims[3], 0));
    HomologyReport rep = homology(C, 0, 3);
    CHECK(rep.rows[0].homologyDim == 1);
    CHECK(rep.rows[1].homologyDim == 0);
    CHECK(rep.rows[2].homologyDim == 0);
    CHECK(rep.rows[3].homologyDim == 1);
}

TEST_CASE("bicomplexes: squares, anticommutation and totalization") {
    Ring R = Ring::rationals();
    SUBCASE("zero differentials give homology equal to the space dimensions") {
        Bicomplex B;
        B.ring = R;
        B.dims[{0, 0}] = 1;
        B.dims[{0, 1}] = 2;
        B.dims[{1, 0}] = 3;
        B.dims[{1, 1}] = 1;
        CHECK(B.checkSquares().empty());
        ChainComplex C = B.totalize(0, 2);
        HomologyReport rep = homology(C, 0, 1);
        CHECK(rep.rows[0].homologyDim == 1);
        CHECK(rep.rows[1].homologyDim == 5);
    }
    SUBCASE("commuting nonzero differentials are rejected") {
        Bicomplex B;
        B.ring = R;
        for (int r : {0, 1})
            for (int s : {0, 1}) B.dims[{r, s}] = 1;
        SparseMat one = SparseMat::identity(R, 1);
        B.dh[{1, 0}] = one;
        B.dh[{1, 1}] = one;
        B.dv[{0, 1}] = one;
        B.dv[{1, 1}] = one;
        auto issues = B.checkSquares();
        REQUIRE(!issues.empty());
        CHECK(issues[0].find("anticommute") != std::string::npos);
    }
}

TEST_CASE("series-ring homology reports torsion separately") {
    Ring S = Ring::series(3);
    ChainComplex C;
    C.ring = S;
    C.shift = -1;
    C.dims = {1, 1};
    C.d.push_back(SparseMat::zero(S, 0, 1));
    SparseMat h = SparseMat::zero(S, 1, 1);
    h.set(0, 0, Scalar::varPower(S, 1));
    C.d.push_back(h);
    HomologyReport rep = homology(C, 0, 0);
    REQUIRE(rep.rows.size() == 1);
    // over Q the expansion has rank 2, so one torsion class h^1 survives
    CHECK(rep.rows[0].kernelDim == 3);
    CHECK(rep.rows[0].imageDim == 2);
    CHECK(rep.rows[0].homologyDim == 1);
    REQUIRE(rep.rows[0].torsion.size() == 1);
    CHECK(rep.rows[0].torsion[0] == 1);
    CHECK(rep.str().find("torsion h^1") != std::string::npos);
    CHECK(rep.tsv().find("degree\tkernel\timage\thomology") == 0);
}

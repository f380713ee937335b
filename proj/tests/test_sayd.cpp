#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfcyc/errors.hpp"
#include "hopfcyc/sayd.hpp"

#include <algorithm>

using namespace hopfcyc;

namespace {

SaydModule dim1Module(std::shared_ptr<HopfAlgebra> H, Variance var,
                      const std::map<std::string, Scalar>& chi, const Word& sigma) {
    SaydModule M(H, 1, var);
    Ring R = H->ring();
    const auto& gens = H->alg().generators();
    for (size_t g = 0; g < gens.size(); ++g) {
        SparseMat m = SparseMat::zero(R, 1, 1);
        auto it = chi.find(gens[g].name);
        m.set(0, 0, it == chi.end() ? Scalar::one(R) : it->second);
        M.setActionMatrix(static_cast<int>(g), m);
    }
    CoactionTerms t;
    t.emplace(std::make_pair(sigma, 0), Scalar::one(R));
    M.setCoaction(0, std::move(t));
    return M;
}

SaydModule trivialModule(std::shared_ptr<HopfAlgebra> H, Variance var) {
    std::map<std::string, Scalar> chi;
    Ring R = H->ring();
    for (const auto& g : H->alg().generators())
        chi.emplace(g.name, H->counit(H->alg().gen(g.name)));
    return dim1Module(std::move(H), var, chi, Word());
}

} // namespace

TEST_CASE("trivial coefficients over cocommutative entries pass in all variances") {
    for (const std::string& name : {"group_c2", "group_c4", "u_abelian_2", "u_sl2"}) {
        CAPTURE(name);
        auto H = catalog::get(name);
        for (Variance v : {Variance::RightLeft, Variance::LeftLeft, Variance::LeftRight,
                           Variance::RightRight}) {
            CAPTURE(varianceName(v));
            auto issues = trivialModule(H, v).check();
            for (const auto& s : issues) CAPTURE(s);
            CHECK(issues.empty());
        }
    }
}

TEST_CASE("sign action with grouplike coaction over Q[C_2] fails exactly stability") {
    auto H = catalog::get("group_c2");
    Ring R = H->ring();
    SaydModule M = dim1Module(H, Variance::RightLeft, {{"g", Scalar::fromInt(R, -1)}},
                              Word{0});
    auto issues = M.check();
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].find("stability") != std::string::npos);
    // with trivial action the same coaction is fine: m.g = m
    CHECK(dim1Module(H, Variance::RightLeft, {}, Word{0}).check().empty());
}

TEST_CASE("Sweedler coefficient modules of dimension one") {
    auto H = catalog::get("sweedler");
    Ring R = H->ring();
    // sign character with trivial coaction passes all four axioms
    std::map<std::string, Scalar> sign{{"g", Scalar::fromInt(R, -1)},
                                       {"x", Scalar::zero(R)}};
    CHECK(dim1Module(H, Variance::RightLeft, sign, Word()).check().empty());
    // trivial character needs the grouplike g as coaction
    std::map<std::string, Scalar> triv{{"g", Scalar::one(R)}, {"x", Scalar::zero(R)}};
    CHECK(!dim1Module(H, Variance::RightLeft, triv, Word()).check().empty());
    CHECK(dim1Module(H, Variance::RightLeft, triv, Word{0}).check().empty());
    // and these are the only two the enumerator finds
    auto sols = solveSayd1(H, Variance::RightLeft);
    CHECK(sols.size() == 2);
    for (const auto& M : sols) CHECK(M.check().empty());
}

TEST_CASE("dimension-one enumeration over quantum and cyclic entries") {
    SUBCASE("uq_sl2 right-left: unique solution, trivial character with K") {
        auto H = catalog::get("uq_sl2");
        auto sols = solveSayd1(H, Variance::RightLeft);
        REQUIRE(sols.size() == 1);
        const SaydModule& M = sols[0];
        int K = 1;
        CHECK(M.actionMatrix(K).get(0, 0).isOne());
        CHECK(M.actionMatrix(3).get(0, 0).isZero()); // E acts by zero
        REQUIRE(M.coaction(0).size() == 1);
        CHECK(M.coaction(0).begin()->first.first == Word{static_cast<char>(K)});
    }
    SUBCASE("uq_sl2 left-left: trivial character needs K^{-1}") {
        auto H = catalog::get("uq_sl2");
        CHECK(!trivialModule(H, Variance::LeftLeft).check().empty());
        auto sols = solveSayd1(H, Variance::LeftLeft);
        REQUIRE(sols.size() == 1);
        const SaydModule& M = sols[0];
        int Kinv = 2;
        CHECK(M.actionMatrix(1).get(0, 0).isOne());
        CHECK(M.actionMatrix(3).get(0, 0).isZero()); // E acts by zero
        REQUIRE(M.coaction(0).size() == 1);
        CHECK(M.coaction(0).begin()->first.first == Word{static_cast<char>(Kinv)});
    }
    SUBCASE("group_c4: six character/grouplike pairs") {
        auto sols = solveSayd1(catalog::get("group_c4"), Variance::RightLeft);
        CHECK(sols.size() == 6);
    }
    SUBCASE("taft_9: trivial character needs g^2, trivial coaction needs zeta^2") {
        auto H = catalog::get("taft_9");
        Ring R = H->ring();
        auto sols = solveSayd1(H, Variance::RightLeft);
        REQUIRE(sols.size() == 2);
        bool hasGSquared = false, hasZetaSquared = false;
        Scalar z2 = Scalar::varPower(R, 2);
        for (const auto& M : sols) {
            const Word& sigma = M.coaction(0).begin()->first.first;
            Scalar cg = M.actionMatrix(0).get(0, 0);
            if (sigma == Word{0, 0} && cg.isOne()) hasGSquared = true;
            if (sigma.empty() && cg == z2) hasZetaSquared = true;
        }
        CHECK(hasGSquared);
        CHECK(hasZetaSquared);
    }
}

TEST_CASE("dimension-two solver returns verified triangular modules") {
    auto H = catalog::get("sweedler");
    auto sols = solveSayd2(H, Variance::RightLeft);
    CHECK(sols.size() >= 3); // at least the diagonal sums of 1-dim solutions
    for (const auto& M : sols) {
        CAPTURE(M.describe());
        CHECK(M.check().empty());
        CHECK(M.dim() == 2);
    }
    // deterministic: a second run produces the same descriptions
    auto again = solveSayd2(H, Variance::RightLeft);
    REQUIRE(again.size() == sols.size());
    for (size_t i = 0; i < sols.size(); ++i)
        CHECK(sols[i].describe() == again[i].describe());
}

TEST_CASE("dual contramodule of the trivial module evaluates at the unit") {
    auto H = catalog::get("group_c2");
    Ring R = H->ring();
    ContraModule C = dualize(trivialModule(H, Variance::RightLeft), 2);
    REQUIRE(C.alphaSupport().size() == 1);
    CHECK(C.alphaSupport().begin()->first.empty());
    FiniteMap f;
    f.emplace(Word(), SparseVec{{0, Scalar::fromInt(R, 5)}});
    f.emplace(Word{0}, SparseVec{{0, Scalar::fromInt(R, 7)}});
    SparseVec out = C.alpha(f);
    CHECK(out == SparseVec{{0, Scalar::fromInt(R, 5)}});
    CHECK(C.check().empty());
}

TEST_CASE("dualize transposes the action and stores the coaction constants") {
    auto H = catalog::get("sweedler");
    auto sols = solveSayd2(H, Variance::RightLeft);
    REQUIRE(!sols.empty());
    for (const auto& M : sols) {
        ContraModule C = dualize(M, 3);
        for (int g = 0; g < 2; ++g)
            CHECK(C.actionMatrix(g) == M.actionMatrix(g).transposed());
        // the alpha matrices are exactly the coaction structure constants,
        // so the double transpose recovers M
        for (int m = 0; m < M.dim(); ++m)
            for (const auto& [key, c] : M.coaction(m))
                CHECK(C.alphaMatrix(key.first).get(m, key.second) == c);
        auto issues = C.check();
        for (const auto& s : issues) CAPTURE(s);
        CHECK(issues.empty());
    }
    CHECK_THROWS_AS(dualize(trivialModule(H, Variance::LeftLeft), 2),
                    VarianceMismatchError);
}

TEST_CASE("contra-action evaluation outside the stored family is an error") {
    auto H = catalog::get("u_sl2");
    ContraModule C = dualize(trivialModule(H, Variance::RightLeft), 1);
    FiniteMap f;
    f.emplace(Word{0, 0}, SparseVec{{0, Scalar::one(H->ring())}}); // F^2, degree 2
    CHECK_THROWS_AS(C.alpha(f), DegreeOverflowError);
    SparseMat big = SparseMat::identity(H->ring(), 1);
    CHECK_THROWS_AS(C.setAlphaMatrix(Word{0, 0}, big), DegreeOverflowError);
}

TEST_CASE("Lie algebra constructors satisfy Jacobi") {
    Ring R = Ring::rationals();
    CHECK(LieAlgebra::abelian(R, 3).checkJacobi().empty());
    CHECK(LieAlgebra::nonabelian2(R).checkJacobi().empty());
    CHECK(LieAlgebra::sl2(R).checkJacobi().empty());
    LieAlgebra bad = LieAlgebra::abelian(R, 2);
    bad.bracket[0][1] = SparseVec{{0, Scalar::one(R)}}; // not antisymmetric
    CHECK(!bad.checkJacobi().empty());
}

TEST_CASE("Lie coefficient axioms on hand-built modules") {
    Ring R = Ring::rationals();
    SUBCASE("abelian with zero coaction") {
        LieSaydModule M(LieAlgebra::abelian(R, 2), 2);
        SparseMat A = SparseMat::zero(R, 2, 2);
        A.set(0, 0, Scalar::fromInt(R, 3));
        A.set(1, 1, Scalar::fromInt(R, -1));
        M.setActionMatrix(0, A);
        M.setActionMatrix(1, A * A);
        CHECK(M.checkSayd().empty());
        CHECK(M.checkUnimodularStable().empty());
        CHECK(M.locallyConilpotent());
    }
    SUBCASE("adjoint module of sl2 with zero coaction") {
        LieAlgebra g = LieAlgebra::sl2(R);
        LieSaydModule M(g, 3);
        for (int k = 0; k < 3; ++k) {
            SparseMat A = SparseMat::zero(R, 3, 3);
            for (int j = 0; j < 3; ++j)
                for (const auto& [i, c] : g.bracket[j][k]) A.set(i, j, c);
            M.setActionMatrix(k, A);
        }
        CHECK(M.checkSayd().empty());
        LieSaydModule D = lieDualUnimodular(M);
        CHECK(D.checkUnimodularStable().empty());
        CHECK(D.checkSayd().empty());
    }
    SUBCASE("k over sl2 with coaction H x 1 and zero action") {
        LieSaydModule M(LieAlgebra::sl2(R), 1);
        SparseMat one = SparseMat::identity(R, 1);
        for (int i = 0; i < 3; ++i) M.setActionMatrix(i, SparseMat::zero(R, 1, 1));
        M.setCoactionMatrix(1, one); // the H leg
        auto issues = M.checkSayd();
        // [H,E] and [H,F] obstruct the coaction compatibility; stability holds
        REQUIRE(issues.size() == 2);
        for (const auto& s : issues) CHECK(s.find("(iii)") != std::string::npos);
    }
    SUBCASE("a non-module fails axiom (i)") {
        LieSaydModule M(LieAlgebra::nonabelian2(R), 2);
        SparseMat A = SparseMat::zero(R, 2, 2);
        A.set(0, 1, Scalar::one(R));
        M.setActionMatrix(0, A);
        M.setActionMatrix(1, A); // [X,Y]=X cannot act by a commuting pair
        auto issues = M.checkSayd();
        REQUIRE(!issues.empty());
        CHECK(issues[0].find("(i)") != std::string::npos);
        CHECK_THROWS_AS(lieDualUnimodular(M), NonSaydCoefficientError);
    }
}

TEST_CASE("duals of random stable modules are unimodular stable") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 100; ++trial) {
        CAPTURE(trial);
        LieSaydModule M = randomLieSayd(rng);
        auto issues = M.checkSayd();
        for (const auto& s : issues) CAPTURE(s);
        REQUIRE(issues.empty());
        CHECK(M.locallyConilpotent());
        LieSaydModule D = lieDualUnimodular(M);
        CHECK(D.checkSayd().empty());
        CHECK(D.checkUnimodularStable().empty());
    }
}

#include "hopfcyc/errors.hpp"
#include "hopfcyc/hopf.hpp"

#include <cstdlib>

namespace hopfcyc::catalog {

namespace {

long factorial(int k) {
    long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

struct B {
    std::shared_ptr<Presentation> p;
    std::shared_ptr<HopfAlgebra> h;
    Ring R;

    B(const std::string& name, Ring ring, std::vector<Generator> gens)
        : p(std::make_shared<Presentation>(name, ring, std::move(gens))), R(ring) {}

    static Word w(std::initializer_list<int> ls) {
        Word out;
        for (int i : ls) out.push_back(static_cast<char>(i));
        return out;
    }
    Scalar n(long v) const { return Scalar::fromInt(R, v); }
    Scalar one() const { return Scalar::one(R); }
    void rule(std::initializer_list<int> lhs,
              std::initializer_list<std::pair<Word, Scalar>> rhs) {
        std::map<Word, Scalar> m;
        for (const auto& pr : rhs) m.insert(pr);
        p->addRule(w(lhs), std::move(m));
    }
    AlgebraElement el(std::initializer_list<int> word) const {
        return p->normalize({{w(word), one()}});
    }
    AlgebraElement lin(std::initializer_list<std::pair<Word, Scalar>> t) const {
        std::map<Word, Scalar> m;
        for (const auto& pr : t) m.insert(pr);
        return p->normalize(std::move(m));
    }
    void hopf() { h = std::make_shared<HopfAlgebra>(p); }
    TensorElement tens(std::vector<std::pair<AlgebraElement, AlgebraElement>> ps) const {
        TensorElement out({p.get(), p.get()});
        for (const auto& pr : ps) out = out + TensorElement::tensorOf({pr.first, pr.second});
        return out;
    }
    TensorElement grouplike(int g) const { return tens({{p->gen(g), p->gen(g)}}); }
    TensorElement prim(int g) const {
        return tens({{p->gen(g), p->unit()}, {p->unit(), p->gen(g)}});
    }
    // Delta(g) = g (x) t + 1 (x) g
    TensorElement skewPrim(int g, const AlgebraElement& t) const {
        return tens({{p->gen(g), t}, {p->unit(), p->gen(g)}});
    }
    // Delta(g) = g (x) 1 + t (x) g
    TensorElement skewPrimL(int g, const AlgebraElement& t) const {
        return tens({{p->gen(g), p->unit()}, {t, p->gen(g)}});
    }
    void set(int g, TensorElement cop, Scalar cou, AlgebraElement anti, AlgebraElement antiInv) {
        h->setGeneratorStructure(g, std::move(cop), std::move(cou), std::move(anti),
                                 std::move(antiInv));
    }
};

std::shared_ptr<HopfAlgebra> uAbelian1() {
    B b("u_abelian_1", Ring::rationals(), {{"X", 1}});
    b.hopf();
    b.set(0, b.prim(0), b.n(0), b.p->gen(0).scaled(b.n(-1)), b.p->gen(0).scaled(b.n(-1)));
    return b.h;
}

std::shared_ptr<HopfAlgebra> uAbelian2() {
    B b("u_abelian_2", Ring::rationals(), {{"X", 1}, {"Y", 1}});
    b.rule({1, 0}, {{B::w({0, 1}), b.one()}});
    b.hopf();
    for (int g : {0, 1})
        b.set(g, b.prim(g), b.n(0), b.p->gen(g).scaled(b.n(-1)), b.p->gen(g).scaled(b.n(-1)));
    return b.h;
}

// Two-dimensional nonabelian Lie algebra: [Y, X] = -X.
std::shared_ptr<HopfAlgebra> uNonabelian2() {
    B b("u_nonabelian_2", Ring::rationals(), {{"X", 1}, {"Y", 1}});
    b.rule({1, 0}, {{B::w({0, 1}), b.one()}, {B::w({0}), b.n(-1)}});
    b.hopf();
    for (int g : {0, 1})
        b.set(g, b.prim(g), b.n(0), b.p->gen(g).scaled(b.n(-1)), b.p->gen(g).scaled(b.n(-1)));
    return b.h;
}

std::shared_ptr<HopfAlgebra> uSl2() {
    B b("u_sl2", Ring::rationals(), {{"F", 1}, {"H", 1}, {"E", 1}});
    b.rule({2, 0}, {{B::w({0, 2}), b.one()}, {B::w({1}), b.one()}});
    b.rule({1, 0}, {{B::w({0, 1}), b.one()}, {B::w({0}), b.n(-2)}});
    b.rule({2, 1}, {{B::w({1, 2}), b.one()}, {B::w({2}), b.n(-2)}});
    b.hopf();
    for (int g : {0, 1, 2})
        b.set(g, b.prim(g), b.n(0), b.p->gen(g).scaled(b.n(-1)), b.p->gen(g).scaled(b.n(-1)));
    return b.h;
}

std::shared_ptr<HopfAlgebra> groupCn(int order) {
    if (order < 1) throw ManifestError("cyclic group order must be positive");
    B b("group_c" + std::to_string(order), Ring::rationals(), {{"g", 0}});
    Word gn(static_cast<size_t>(order), static_cast<char>(0));
    b.p->addRule(gn, {{Word(), b.one()}});
    b.hopf();
    Word ginv(static_cast<size_t>((order - 1) % order), static_cast<char>(0));
    AlgebraElement inv = b.p->normalize({{ginv, b.one()}});
    b.set(0, b.grouplike(0), b.one(), inv, inv);
    return b.h;
}

std::shared_ptr<HopfAlgebra> sweedler() {
    B b("sweedler", Ring::rationals(), {{"g", 0}, {"x", 1}});
    b.rule({0, 0}, {{Word(), b.one()}});
    b.rule({1, 1}, {});
    b.rule({1, 0}, {{B::w({0, 1}), b.n(-1)}});
    b.hopf();
    b.set(0, b.grouplike(0), b.one(), b.p->gen(0), b.p->gen(0));
    b.set(1, b.skewPrimL(1, b.p->gen(0)), b.n(0), b.el({0, 1}).scaled(b.n(-1)), b.el({0, 1}));
    return b.h;
}

std::shared_ptr<HopfAlgebra> taft9() {
    Ring R = Ring::cyclotomic(3);
    B b("taft_9", R, {{"g", 0}, {"x", 1}});
    Scalar z = Scalar::varPower(R, 1);
    b.rule({0, 0, 0}, {{Word(), b.one()}});
    b.rule({1, 1, 1}, {});
    b.rule({1, 0}, {{B::w({0, 1}), z}});
    b.hopf();
    b.set(0, b.grouplike(0), b.one(), b.el({0, 0}), b.el({0, 0}));
    // S(x) = -g^2 x, S^-1(x) = -z^2 g^2 x
    b.set(1, b.skewPrimL(1, b.p->gen(0)), b.n(0), b.el({0, 0, 1}).scaled(b.n(-1)),
          b.el({0, 0, 1}).scaled(-z * z));
    return b.h;
}

// PBW order F < K < Kinv < E.
std::shared_ptr<HopfAlgebra> uqSl2() {
    Ring R = Ring::functionField();
    B b("uq_sl2", R, {{"F", 1}, {"K", 0, 2}, {"Kinv", 0, 1}, {"E", 1}});
    Scalar q = Scalar::varPower(R, 1);
    Scalar d = (q - q.pow(-1)).inverse();
    b.rule({3, 0}, {{B::w({0, 3}), b.one()}, {B::w({1}), d}, {B::w({2}), -d}});
    b.rule({3, 1}, {{B::w({1, 3}), q.pow(-2)}});
    b.rule({3, 2}, {{B::w({2, 3}), q.pow(2)}});
    b.rule({1, 0}, {{B::w({0, 1}), q.pow(-2)}});
    b.rule({2, 0}, {{B::w({0, 2}), q.pow(2)}});
    b.rule({1, 2}, {{Word(), b.one()}});
    b.rule({2, 1}, {{Word(), b.one()}});
    b.hopf();
    b.set(0, b.skewPrimL(0, b.p->gen(2)), b.n(0), b.el({1, 0}).scaled(b.n(-1)),
          b.el({1, 0}).scaled(-q.pow(2)));
    b.set(1, b.grouplike(1), b.one(), b.p->gen(2), b.p->gen(2));
    b.set(2, b.grouplike(2), b.one(), b.p->gen(1), b.p->gen(1));
    b.set(3, b.skewPrim(3, b.p->gen(1)), b.n(0), b.el({3, 2}).scaled(b.n(-1)),
          b.el({3, 2}).scaled(-q.pow(-2)));
    return b.h;
}

// F < K1 < K1inv < K2 < K2inv < E; K = K1inv K2 plays the sl2 Cartan.
std::shared_ptr<HopfAlgebra> uqGl2() {
    Ring R = Ring::functionField();
    B b("uq_gl2", R,
        {{"F", 1}, {"K1", 0, 2}, {"K1inv", 0, 1}, {"K2", 0, 4}, {"K2inv", 0, 3}, {"E", 1}});
    Scalar q = Scalar::varPower(R, 1);
    Scalar d = (q - q.pow(-1)).inverse();
    Scalar one = b.one();
    // Cartan torus
    b.rule({1, 2}, {{Word(), one}});
    b.rule({2, 1}, {{Word(), one}});
    b.rule({3, 4}, {{Word(), one}});
    b.rule({4, 3}, {{Word(), one}});
    b.rule({3, 1}, {{B::w({1, 3}), one}});
    b.rule({3, 2}, {{B::w({2, 3}), one}});
    b.rule({4, 1}, {{B::w({1, 4}), one}});
    b.rule({4, 2}, {{B::w({2, 4}), one}});
    // E past Cartans: K1 E K1inv = q^-1 E, K2 E K2inv = q E
    b.rule({5, 1}, {{B::w({1, 5}), q}});
    b.rule({5, 2}, {{B::w({2, 5}), q.pow(-1)}});
    b.rule({5, 3}, {{B::w({3, 5}), q.pow(-1)}});
    b.rule({5, 4}, {{B::w({4, 5}), q}});
    // Cartans past F: K1 F K1inv = q F, K2 F K2inv = q^-1 F
    b.rule({1, 0}, {{B::w({0, 1}), q}});
    b.rule({2, 0}, {{B::w({0, 2}), q.pow(-1)}});
    b.rule({3, 0}, {{B::w({0, 3}), q.pow(-1)}});
    b.rule({4, 0}, {{B::w({0, 4}), q}});
    // [E, F] = (K1inv K2 - K1 K2inv)/(q - q^-1)
    b.rule({5, 0}, {{B::w({0, 5}), one}, {B::w({2, 3}), d}, {B::w({1, 4}), -d}});
    b.hopf();
    AlgebraElement K = b.el({2, 3});     // K1inv K2
    AlgebraElement Kinv = b.el({1, 4});  // K1 K2inv
    b.set(0, b.skewPrimL(0, Kinv), b.n(0), (K * b.p->gen(0)).scaled(b.n(-1)),
          (K * b.p->gen(0)).scaled(-q.pow(2)));
    b.set(1, b.grouplike(1), one, b.p->gen(2), b.p->gen(2));
    b.set(2, b.grouplike(2), one, b.p->gen(1), b.p->gen(1));
    b.set(3, b.grouplike(3), one, b.p->gen(4), b.p->gen(4));
    b.set(4, b.grouplike(4), one, b.p->gen(3), b.p->gen(3));
    b.set(5, b.skewPrim(5, K), b.n(0), (b.p->gen(5) * Kinv).scaled(b.n(-1)),
          (b.p->gen(5) * Kinv).scaled(-q.pow(-2)));
    return b.h;
}

// Extended U_q(sl_2): Cartan generators L1, L2 with L1 L2 = 1 (L2 is
// eliminated by rewriting), K = L1 L2^-1 = L1^2.
std::shared_ptr<HopfAlgebra> uqExtSl2() {
    Ring R = Ring::functionField();
    B b("uq_ext_sl2", R,
        {{"F", 1}, {"L1", 0, 2}, {"L1inv", 0, 1}, {"L2", 1}, {"L2inv", 1}, {"E", 1}});
    Scalar q = Scalar::varPower(R, 1);
    Scalar d = (q - q.pow(-1)).inverse();
    Scalar one = b.one();
    b.rule({1, 2}, {{Word(), one}});
    b.rule({2, 1}, {{Word(), one}});
    // L1 L2 = 1: eliminate L2 = L1inv (L2, L2inv carry formal degree 1 so the
    // shortening rules respect the monomial order)
    b.rule({3}, {{B::w({2}), one}});
    b.rule({4}, {{B::w({1}), one}});
    // L1 E L1inv = q E, L1 F L1inv = q^-1 F
    b.rule({5, 1}, {{B::w({1, 5}), q.pow(-1)}});
    b.rule({5, 2}, {{B::w({2, 5}), q}});
    b.rule({1, 0}, {{B::w({0, 1}), q.pow(-1)}});
    b.rule({2, 0}, {{B::w({0, 2}), q}});
    // [E, F] = (L1^2 - L1inv^2)/(q - q^-1)
    b.rule({5, 0}, {{B::w({0, 5}), one}, {B::w({1, 1}), d}, {B::w({2, 2}), -d}});
    b.hopf();
    AlgebraElement K = b.el({1, 1});
    AlgebraElement Kinv = b.el({2, 2});
    b.set(0, b.skewPrimL(0, Kinv), b.n(0), (K * b.p->gen(0)).scaled(b.n(-1)),
          (K * b.p->gen(0)).scaled(-q.pow(2)));
    b.set(1, b.grouplike(1), one, b.p->gen(2), b.p->gen(2));
    b.set(2, b.grouplike(2), one, b.p->gen(1), b.p->gen(1));
    b.set(3, b.grouplike(3), one, b.p->gen(4), b.p->gen(4));
    b.set(4, b.grouplike(4), one, b.p->gen(3), b.p->gen(3));
    b.set(5, b.skewPrim(5, K), b.n(0), (b.p->gen(5) * Kinv).scaled(b.n(-1)),
          (b.p->gen(5) * Kinv).scaled(-q.pow(-2)));
    return b.h;
}

// Extended U_q(sl_3): L1 L2 L3 = 1, L3 eliminated in favor of L1inv L2inv.
std::shared_ptr<HopfAlgebra> uqExtSl3() {
    Ring R = Ring::functionField();
    B b("uq_ext_sl3", R,
        {{"F1", 1}, {"F2", 1}, {"L1", 0, 3}, {"L1inv", 0, 2}, {"L2", 0, 5}, {"L2inv", 0, 4},
         {"L3", 1}, {"L3inv", 1}, {"E1", 1}, {"E2", 1}});
    Scalar q = Scalar::varPower(R, 1);
    Scalar d = (q - q.pow(-1)).inverse();
    Scalar qq = q + q.pow(-1);
    Scalar one = b.one();
    const int F1 = 0, F2 = 1, L1 = 2, L1i = 3, L2 = 4, L2i = 5, L3 = 6, L3i = 7, E1 = 8,
              E2 = 9;
    b.rule({L1, L1i}, {{Word(), one}});
    b.rule({L1i, L1}, {{Word(), one}});
    b.rule({L2, L2i}, {{Word(), one}});
    b.rule({L2i, L2}, {{Word(), one}});
    b.rule({L3}, {{B::w({L1i, L2i}), one}});
    b.rule({L3i}, {{B::w({L1, L2}), one}});
    b.rule({L2, L1}, {{B::w({L1, L2}), one}});
    b.rule({L2, L1i}, {{B::w({L1i, L2}), one}});
    b.rule({L2i, L1}, {{B::w({L1, L2i}), one}});
    b.rule({L2i, L1i}, {{B::w({L1i, L2i}), one}});
    // Li E_j Li^-1 = q^(d_ij - d_i,j+1) E_j
    b.rule({E1, L1}, {{B::w({L1, E1}), q.pow(-1)}});
    b.rule({E1, L1i}, {{B::w({L1i, E1}), q}});
    b.rule({E1, L2}, {{B::w({L2, E1}), q}});
    b.rule({E1, L2i}, {{B::w({L2i, E1}), q.pow(-1)}});
    b.rule({E2, L1}, {{B::w({L1, E2}), one}});
    b.rule({E2, L1i}, {{B::w({L1i, E2}), one}});
    b.rule({E2, L2}, {{B::w({L2, E2}), q.pow(-1)}});
    b.rule({E2, L2i}, {{B::w({L2i, E2}), q}});
    b.rule({L1, F1}, {{B::w({F1, L1}), q.pow(-1)}});
    b.rule({L1i, F1}, {{B::w({F1, L1i}), q}});
    b.rule({L2, F1}, {{B::w({F1, L2}), q}});
    b.rule({L2i, F1}, {{B::w({F1, L2i}), q.pow(-1)}});
    b.rule({L1, F2}, {{B::w({F2, L1}), one}});
    b.rule({L1i, F2}, {{B::w({F2, L1i}), one}});
    b.rule({L2, F2}, {{B::w({F2, L2}), q.pow(-1)}});
    b.rule({L2i, F2}, {{B::w({F2, L2i}), q}});
    // [E_i, F_j] = delta_ij (K_i - K_i^-1)/(q - q^-1),
    // K_1 = L1 L2inv, K_2 = L2 L3inv = L1 L2^2
    b.rule({E1, F1}, {{B::w({F1, E1}), one}, {B::w({L1, L2i}), d}, {B::w({L1i, L2}), -d}});
    b.rule({E2, F2},
           {{B::w({F2, E2}), one}, {B::w({L1, L2, L2}), d}, {B::w({L1i, L2i, L2i}), -d}});
    b.rule({E2, F1}, {{B::w({F1, E2}), one}});
    b.rule({E1, F2}, {{B::w({F2, E1}), one}});
    // quantum Serre
    b.rule({E2, E1, E1}, {{B::w({E1, E2, E1}), qq}, {B::w({E1, E1, E2}), -one}});
    b.rule({E2, E2, E1}, {{B::w({E2, E1, E2}), qq}, {B::w({E1, E2, E2}), -one}});
    b.rule({F2, F1, F1}, {{B::w({F1, F2, F1}), qq}, {B::w({F1, F1, F2}), -one}});
    b.rule({F2, F2, F1}, {{B::w({F2, F1, F2}), qq}, {B::w({F1, F2, F2}), -one}});
    b.hopf();
    AlgebraElement K1 = b.el({L1, L2i}), K1inv = b.el({L1i, L2});
    AlgebraElement K2 = b.el({L1, L2, L2}), K2inv = b.el({L1i, L2i, L2i});
    b.set(F1, b.skewPrimL(F1, K1inv), b.n(0), (K1 * b.p->gen(F1)).scaled(b.n(-1)),
          (K1 * b.p->gen(F1)).scaled(-q.pow(2)));
    b.set(F2, b.skewPrimL(F2, K2inv), b.n(0), (K2 * b.p->gen(F2)).scaled(b.n(-1)),
          (K2 * b.p->gen(F2)).scaled(-q.pow(2)));
    b.set(L1, b.grouplike(L1), one, b.p->gen(L1i), b.p->gen(L1i));
    b.set(L1i, b.grouplike(L1i), one, b.p->gen(L1), b.p->gen(L1));
    b.set(L2, b.grouplike(L2), one, b.p->gen(L2i), b.p->gen(L2i));
    b.set(L2i, b.grouplike(L2i), one, b.p->gen(L2), b.p->gen(L2));
    b.set(L3, b.tens({{b.el({L1i, L2i}), b.el({L1i, L2i})}}), one, b.el({L1, L2}),
          b.el({L1, L2}));
    b.set(L3i, b.tens({{b.el({L1, L2}), b.el({L1, L2})}}), one, b.el({L1i, L2i}),
          b.el({L1i, L2i}));
    b.set(E1, b.skewPrim(E1, K1), b.n(0), (b.p->gen(E1) * K1inv).scaled(b.n(-1)),
          (b.p->gen(E1) * K1inv).scaled(-q.pow(-2)));
    b.set(E2, b.skewPrim(E2, K2), b.n(0), (b.p->gen(E2) * K2inv).scaled(b.n(-1)),
          (b.p->gen(E2) * K2inv).scaled(-q.pow(-2)));
    return b.h;
}

AlgebraElement expOf(const B& b, int Hidx, const Scalar& c, int order) {
    // sum_k (c h)^k H^k / k!, truncated by the series order
    std::map<Word, Scalar> t;
    Word Hw;
    Scalar ch = c * Scalar::varPower(b.R, 1);
    Scalar pow = b.one();
    for (int k = 0; k < order; ++k) {
        if (!pow.isZero()) t[Hw] = pow / b.n(factorial(k));
        Hw.push_back(static_cast<char>(Hidx));
        pow = pow * ch;
    }
    return b.p->normalize(std::move(t));
}

std::shared_ptr<HopfAlgebra> uhSl2(int N) {
    Ring R = Ring::series(N);
    B b("uh_sl2", R, {{"F", 1}, {"H", 0, -1, true}, {"E", 1}});
    if (b.p->cartanWindow() < N) b.p->setCartanWindow(N);
    Scalar one = b.one();
    b.rule({2, 1}, {{B::w({1, 2}), one}, {B::w({2}), b.n(-2)}});
    b.rule({1, 0}, {{B::w({0, 1}), one}, {B::w({0}), b.n(-2)}});
    // [E, F] = (e^{hH} - e^{-hH})/(e^h - e^{-h})
    Scalar h = Scalar::varPower(R, 1);
    Scalar denDivH = Scalar::zero(R); // (e^h - e^{-h})/h
    for (int j = 1; j < N + 1; j += 2) denDivH = denDivH + h.pow(j - 1) * b.n(2) / b.n(factorial(j));
    Scalar invDen = denDivH.inverse();
    std::map<Word, Scalar> rhs{{B::w({0, 2}), one}};
    for (int k = 1; k < N + 1; k += 2) {
        Scalar ck = h.pow(k - 1) * b.n(2) / b.n(factorial(k)) * invDen;
        if (!ck.isZero()) rhs[Word(static_cast<size_t>(k), static_cast<char>(1))] = ck;
    }
    b.p->addRule(B::w({2, 0}), std::move(rhs));
    b.hopf();
    AlgebraElement eP = expOf(b, 1, b.n(1), N);   // e^{hH}
    AlgebraElement eM = expOf(b, 1, b.n(-1), N);  // e^{-hH}
    b.set(0, b.skewPrimL(0, eM), b.n(0), (eP * b.p->gen(0)).scaled(b.n(-1)),
          (eP * b.p->gen(0)).scaled(-Scalar::expSeries(R, 2)));
    b.set(1, b.prim(1), b.n(0), b.p->gen(1).scaled(b.n(-1)), b.p->gen(1).scaled(b.n(-1)));
    b.set(2, b.skewPrim(2, eP), b.n(0), (b.p->gen(2) * eM).scaled(b.n(-1)),
          (b.p->gen(2) * eM).scaled(-Scalar::expSeries(R, -2)));
    return b.h;
}

// Coordinate rings of SL2-type: generator order d < c < b < a, with the
// quantum parameter mu (e^h, q, or 1) and an extra determinant pair for GL2.
void matrixCoalgebra(B& b, int d, int c, int bb, int a, const Scalar& mu,
                     const AlgebraElement& det, const AlgebraElement& detInv) {
    Scalar one = b.one();
    auto& p = *b.p;
    b.set(a, b.tens({{p.gen(a), p.gen(a)}, {p.gen(bb), p.gen(c)}}), one, p.gen(d) * detInv,
          p.gen(d) * detInv);
    b.set(bb, b.tens({{p.gen(a), p.gen(bb)}, {p.gen(bb), p.gen(d)}}), Scalar::zero(b.R),
          (p.gen(bb) * detInv).scaled(-mu), (p.gen(bb) * detInv).scaled(-mu.inverse()));
    b.set(c, b.tens({{p.gen(c), p.gen(a)}, {p.gen(d), p.gen(c)}}), Scalar::zero(b.R),
          (p.gen(c) * detInv).scaled(-mu.inverse()), (p.gen(c) * detInv).scaled(-mu));
    b.set(d, b.tens({{p.gen(c), p.gen(bb)}, {p.gen(d), p.gen(d)}}), one, p.gen(a) * detInv,
          p.gen(a) * detInv);
}

std::shared_ptr<HopfAlgebra> oSl2Like(const std::string& name, Ring R, const Scalar& mu) {
    B b(name, R, {{"d", 1}, {"c", 1}, {"b", 1}, {"a", 1}});
    Scalar one = b.one();
    Scalar mi = mu.inverse();
    b.rule({3, 1}, {{B::w({1, 3}), mi}});
    b.rule({3, 2}, {{B::w({2, 3}), mi}});
    b.rule({2, 0}, {{B::w({0, 2}), mi}});
    b.rule({1, 0}, {{B::w({0, 1}), mi}});
    b.rule({2, 1}, {{B::w({1, 2}), one}});
    b.rule({1, 2}, {{B::w({0, 3}), mi}, {Word(), -mi}});
    std::map<Word, Scalar> ad{{B::w({0, 3}), mi * mi}};
    Scalar cu = one - mi * mi;
    if (!cu.isZero()) ad[Word()] = cu;
    b.p->addRule(B::w({3, 0}), std::move(ad));
    b.hopf();
    matrixCoalgebra(b, 0, 1, 2, 3, mu, b.p->unit(), b.p->unit());
    return b.h;
}

std::shared_ptr<HopfAlgebra> oqGl2() {
    Ring R = Ring::functionField();
    B b("oq_gl2", R,
        {{"Dinv", 2}, {"D", 2}, {"d", 1}, {"c", 1}, {"b", 1}, {"a", 1}});
    Scalar q = Scalar::varPower(R, 1);
    Scalar qi = q.pow(-1);
    Scalar one = b.one();
    b.rule({5, 3}, {{B::w({3, 5}), qi}});
    b.rule({5, 4}, {{B::w({4, 5}), qi}});
    b.rule({4, 2}, {{B::w({2, 4}), qi}});
    b.rule({3, 2}, {{B::w({2, 3}), qi}});
    b.rule({4, 3}, {{B::w({3, 4}), one}});
    b.rule({3, 4}, {{B::w({2, 5}), qi}, {B::w({1}), -qi}});
    b.rule({5, 2}, {{B::w({2, 5}), qi * qi}, {B::w({1}), one - qi * qi}});
    // determinant is central and invertible
    b.rule({1, 0}, {{Word(), one}});
    b.rule({0, 1}, {{Word(), one}});
    for (int x : {2, 3, 4, 5}) {
        b.rule({x, 1}, {{B::w({1, x}), one}});
        b.rule({x, 0}, {{B::w({0, x}), one}});
    }
    b.hopf();
    AlgebraElement det = b.p->gen(1), detInv = b.p->gen(0);
    matrixCoalgebra(b, 2, 3, 4, 5, q, det, detInv);
    b.set(1, b.tens({{det, det}}), one, detInv, detInv);
    b.set(0, b.tens({{detInv, detInv}}), one, det, det);
    return b.h;
}

std::shared_ptr<HopfAlgebra> oGm() {
    B b("o_gm", Ring::rationals(), {{"tinv", 1}, {"t", 1}});
    b.rule({1, 0}, {{Word(), b.one()}});
    b.rule({0, 1}, {{Word(), b.one()}});
    b.hopf();
    b.set(0, b.grouplike(0), b.one(), b.p->gen(1), b.p->gen(1));
    b.set(1, b.grouplike(1), b.one(), b.p->gen(0), b.p->gen(0));
    return b.h;
}

std::shared_ptr<HopfAlgebra> oGa() {
    B b("o_ga", Ring::rationals(), {{"t", 1}});
    b.hopf();
    b.set(0, b.prim(0), b.n(0), b.p->gen(0).scaled(b.n(-1)), b.p->gen(0).scaled(b.n(-1)));
    return b.h;
}

} // namespace

std::vector<std::string> names() {
    return {"u_abelian_1", "u_abelian_2", "u_nonabelian_2", "u_sl2",
            "group_c2",    "group_c3",    "group_c4",       "sweedler",
            "taft_9",      "uq_sl2",      "uq_ext_sl2",     "uq_ext_sl3",
            "uq_gl2",      "uh_sl2",      "oh_sl2",         "oq_sl2",
            "oq_gl2",      "o_sl2",       "o_gm",           "o_ga"};
}

std::shared_ptr<HopfAlgebra> get(const std::string& name, int seriesOrder) {
    if (name == "u_abelian_1") return uAbelian1();
    if (name == "u_abelian_2") return uAbelian2();
    if (name == "u_nonabelian_2") return uNonabelian2();
    if (name == "u_sl2") return uSl2();
    if (name.rfind("group_c", 0) == 0) return groupCn(std::atoi(name.c_str() + 7));
    if (name == "sweedler") return sweedler();
    if (name == "taft_9") return taft9();
    if (name == "uq_sl2") return uqSl2();
    if (name == "uq_ext_sl2") return uqExtSl2();
    if (name == "uq_ext_sl3") return uqExtSl3();
    if (name == "uq_gl2") return uqGl2();
    if (name == "uh_sl2") return uhSl2(seriesOrder);
    if (name == "oh_sl2") {
        Ring R = Ring::series(seriesOrder);
        return oSl2Like("oh_sl2", R, Scalar::expSeries(R, 1));
    }
    if (name == "oq_sl2") {
        Ring R = Ring::functionField();
        return oSl2Like("oq_sl2", R, Scalar::varPower(R, 1));
    }
    if (name == "oq_gl2") return oqGl2();
    if (name == "o_sl2") {
        Ring R = Ring::rationals();
        return oSl2Like("o_sl2", R, Scalar::one(R));
    }
    if (name == "o_gm") return oGm();
    if (name == "o_ga") return oGa();
    throw ManifestError("unknown catalog entry: " + name);
}

} // namespace hopfcyc::catalog

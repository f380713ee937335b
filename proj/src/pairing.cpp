#include "hopfcyc/pairing.hpp"

#include "hopfcyc/errors.hpp"

#include <algorithm>

namespace hopfcyc {

namespace {

void addAt(SparseMat& m, int r, int c, const Scalar& v) {
    if (v.isZero()) return;
    auto& row = m.row[static_cast<size_t>(r)];
    auto it = row.find(c);
    if (it == row.end()) {
        row.emplace(c, v);
        return;
    }
    it->second = it->second + v;
    if (it->second.isZero()) row.erase(it);
}

template <typename K>
void accum(std::map<K, Scalar>& m, const K& k, const Scalar& v) {
    if (v.isZero()) return;
    auto it = m.find(k);
    if (it == m.end()) {
        m.emplace(k, v);
        return;
    }
    it->second = it->second + v;
    if (it->second.isZero()) m.erase(it);
}

thread_local int evalDepth = 0;

struct DepthGuard {
    DepthGuard() {
        if (++evalDepth > 256) throw Error("pairing evaluation recursion too deep");
    }
    ~DepthGuard() { --evalDepth; }
};

} // namespace

// ---------------------------------------------------------------------------
// HopfPairing

HopfPairing::HopfPairing(std::shared_ptr<HopfAlgebra> left, std::shared_ptr<HopfAlgebra> right,
                         int degreeCap)
    : left_(std::move(left)), right_(std::move(right)), cap_(degreeCap) {
    if (!(left_->ring() == right_->ring()))
        throw MixedRingError("pairing sides live over " + left_->ring().name() + " and " +
                             right_->ring().name());
}

HopfPairing::HopfPairing(const HopfPairing& o) : left_(o.left_), right_(o.right_), cap_(o.cap_) {
    std::lock_guard<std::mutex> lk(o.mu_);
    table_ = o.table_;
    cache_ = o.cache_;
}

HopfPairing& HopfPairing::operator=(const HopfPairing& o) {
    if (this == &o) return *this;
    left_ = o.left_;
    right_ = o.right_;
    cap_ = o.cap_;
    std::scoped_lock lk(mu_, o.mu_);
    table_ = o.table_;
    cache_ = o.cache_;
    return *this;
}

void HopfPairing::setGeneratorValue(int leftGen, int rightGen, Scalar v) {
    std::lock_guard<std::mutex> lk(mu_);
    if (v.isZero())
        table_.erase({leftGen, rightGen});
    else
        table_.insert_or_assign({leftGen, rightGen}, std::move(v));
    cache_.clear();
}

Scalar HopfPairing::evalWords(const Word& u, const Word& v) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = cache_.find({u, v});
        if (it != cache_.end()) return it->second;
    }
    Scalar out = evalUncached(u, v);
    std::lock_guard<std::mutex> lk(mu_);
    cache_.emplace(std::make_pair(u, v), out);
    return out;
}

Scalar HopfPairing::evalUncached(const Word& u, const Word& v) const {
    DepthGuard guard;
    const Ring& R = ring();
    if (left_->alg().degreeOf(u) > cap_ || right_->alg().degreeOf(v) > cap_)
        throw DegreeOverflowError("pairing argument exceeds the degree cap " +
                                  std::to_string(cap_));
    if (u.empty()) return right_->counitWord(v);
    if (v.empty()) return left_->counitWord(u);
    if (u.size() == 1 && v.size() == 1) {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = table_.find({static_cast<int>(u[0]), static_cast<int>(v[0])});
        return it == table_.end() ? Scalar::zero(R) : it->second;
    }
    Scalar out = Scalar::zero(R);
    if (u.size() == 1) {
        // <g, v0 v'> = sum <g1, v0> <g2, v'>
        Word v0(1, v[0]);
        Word rest = v.substr(1);
        TensorElement cop = left_->coproductWord(u);
        for (const auto& [legs, c] : cop.terms()) {
            Scalar a = evalWords(legs[0], v0);
            if (a.isZero()) continue;
            out += c * a * evalWords(legs[1], rest);
        }
        return out;
    }
    // <g u', v> = sum <g, v1> <u', v2>
    Word g(1, u[0]);
    Word rest = u.substr(1);
    TensorElement cop = right_->coproductWord(v);
    for (const auto& [legs, c] : cop.terms()) {
        Scalar a = evalWords(g, legs[0]);
        if (a.isZero()) continue;
        out += c * a * evalWords(rest, legs[1]);
    }
    return out;
}

Scalar HopfPairing::eval(const AlgebraElement& x, const AlgebraElement& y) const {
    Scalar out = Scalar::zero(ring());
    for (const auto& [u, cu] : x.terms())
        for (const auto& [v, cv] : y.terms()) out += cu * cv * evalWords(u, v);
    return out;
}

AlgebraElement HopfPairing::act(const AlgebraElement& a, const AlgebraElement& phi) const {
    std::map<Word, Scalar> raw;
    for (const auto& [w, c] : phi.terms()) {
        TensorElement cop = right_->coproductWord(w);
        for (const auto& [legs, c2] : cop.terms()) {
            Scalar val = Scalar::zero(ring());
            for (const auto& [u, cu] : a.terms()) val += cu * evalWords(u, legs[1]);
            accum(raw, legs[0], c * c2 * val);
        }
    }
    return right_->alg().normalize(std::move(raw));
}

SparseMat HopfPairing::actionMatrix(const AlgebraElement& a, int degreeCap) const {
    BasisIndex basis(right_->alg().basisUpTo(degreeCap));
    SparseMat out = SparseMat::zero(ring(), basis.size(), basis.size());
    for (int j = 0; j < basis.size(); ++j) {
        AlgebraElement img = act(a, right_->alg().wordElement(basis.words[static_cast<size_t>(j)]));
        for (const auto& [w, c] : img.terms()) addAt(out, basis.indexOf(w), j, c);
    }
    return out;
}

PairingFn HopfPairing::fn() const {
    return [this](const Word& u, const Word& v) { return evalWords(u, v); };
}

// ---------------------------------------------------------------------------
// Borel and Killing forms

HopfPairing borelForm(std::shared_ptr<HopfAlgebra> Uq) {
    const Presentation& p = Uq->alg();
    if (p.name() != "uq_sl2")
        throw ManifestError("no built-in Borel form for " + p.name());
    Ring R = Uq->ring();
    Scalar q = Scalar::varPower(R, 1);
    Scalar qi = q.pow(-1);
    int F = p.generatorIndex("F"), K = p.generatorIndex("K");
    int Kinv = p.generatorIndex("Kinv"), E = p.generatorIndex("E");
    HopfPairing b(Uq, Uq);
    b.setGeneratorValue(K, K, qi);
    b.setGeneratorValue(K, Kinv, q);
    b.setGeneratorValue(Kinv, K, q);
    b.setGeneratorValue(Kinv, Kinv, qi);
    b.setGeneratorValue(E, F, (qi - q).inverse());
    return b;
}

KillingForm::KillingForm(std::shared_ptr<HopfAlgebra> Uq) : U_(Uq), borel_(borelForm(Uq)) {
    for (const auto& g : Uq->alg().generators()) {
        if (!g.name.empty() && g.name[0] == 'F')
            role_.push_back(-1);
        else if (!g.name.empty() && g.name[0] == 'E')
            role_.push_back(1);
        else
            role_.push_back(0);
    }
}

Scalar KillingForm::evalWords(const Word& u, const Word& v) const {
    const Presentation& p = U_->alg();
    auto split = [&](const Word& w, Word& lo, Word& mid, Word& hi) {
        for (char ch : w) {
            int r = role_[static_cast<size_t>(ch)];
            if (r < 0)
                lo.push_back(ch);
            else if (r == 0)
                mid.push_back(ch);
            else
                hi.push_back(ch);
        }
    };
    Word uF, uC, uE, vF, vC, vE;
    split(u, uF, uC, uE);
    split(v, vF, vC, vE);
    Scalar out = borel_.evalWords(uC, vC);
    if (out.isZero()) return out;
    out *= borel_.eval(U_->antipodeWord(uE), p.wordElement(vF));
    if (out.isZero()) return out;
    out *= borel_.eval(p.wordElement(vE), U_->antipodeWord(uF));
    return out;
}

Scalar KillingForm::eval(const AlgebraElement& x, const AlgebraElement& y) const {
    Scalar out = Scalar::zero(U_->ring());
    for (const auto& [u, cu] : x.terms())
        for (const auto& [v, cv] : y.terms()) out += cu * cv * evalWords(u, v);
    return out;
}

// ---------------------------------------------------------------------------
// Catalog pairings

HopfPairing catalogPairing(std::shared_ptr<HopfAlgebra> U, std::shared_ptr<HopfAlgebra> O) {
    const std::string un = U->alg().name(), on = O->alg().name();
    Ring R = U->ring();
    HopfPairing pr(U, O);
    auto gv = [&](const char* lg, const char* rg, const Scalar& v) {
        int li = U->alg().generatorIndex(lg), ri = O->alg().generatorIndex(rg);
        pr.setGeneratorValue(li, ri, v);
    };
    Scalar one = Scalar::one(R);
    if (un == "uq_sl2" && on == "oq_sl2") {
        Scalar q = Scalar::varPower(R, 1), qi = q.pow(-1);
        gv("K", "a", q);
        gv("K", "d", qi);
        gv("Kinv", "a", qi);
        gv("Kinv", "d", q);
        gv("E", "b", one);
        gv("F", "c", one);
        return pr;
    }
    if (un == "uq_gl2" && on == "oq_gl2") {
        Scalar q = Scalar::varPower(R, 1), qi = q.pow(-1);
        gv("K1", "a", qi);
        gv("K1", "d", one);
        gv("K2", "a", one);
        gv("K2", "d", qi);
        gv("K1inv", "a", q);
        gv("K1inv", "d", one);
        gv("K2inv", "a", one);
        gv("K2inv", "d", q);
        gv("E", "b", one);
        gv("F", "c", one);
        gv("K1", "D", qi);
        gv("K2", "D", qi);
        gv("K1inv", "D", q);
        gv("K2inv", "D", q);
        gv("K1", "Dinv", q);
        gv("K2", "Dinv", q);
        gv("K1inv", "Dinv", qi);
        gv("K2inv", "Dinv", qi);
        return pr;
    }
    if ((un == "u_sl2" && on == "o_sl2") || (un == "uh_sl2" && on == "oh_sl2")) {
        gv("H", "a", one);
        gv("H", "d", -one);
        gv("E", "b", one);
        gv("F", "c", one);
        return pr;
    }
    if (un == "u_abelian_1" && on == "o_ga") {
        gv("X", "t", one);
        return pr;
    }
    if (un == "u_abelian_1" && on == "o_gm") {
        gv("X", "t", one);
        gv("X", "tinv", -one);
        return pr;
    }
    throw ManifestError("no built-in pairing between " + un + " and " + on);
}

// ---------------------------------------------------------------------------
// Quantum van Est instance

VanEstInstance makeVanEstInstance(std::shared_ptr<HopfAlgebra> U, std::shared_ptr<HopfAlgebra> O,
                                  const std::vector<int>& subGens, const HopfPairing& pairing,
                                  const SaydModule& M, int degreeCap, int hTensorCap) {
    Ring R = U->ring();
    if (M.variance() != Variance::RightLeft)
        throw VarianceMismatchError("van Est coefficients must be right-left, got " +
                                    varianceName(M.variance()));
    int d = M.dim();
    // The transferred coaction over O is the trivial one; that is exact only
    // when the H-action on M is the counit character.
    for (size_t g = 0; g < U->alg().generators().size(); ++g) {
        Scalar eps = U->counitWord(Word(1, static_cast<char>(g)));
        SparseMat want = SparseMat::identity(R, d).scaled(eps);
        if (!(M.actionMatrix(static_cast<int>(g)) == want))
            throw Error("coefficient action is not the counit character at generator " +
                        U->alg().generators()[g].name);
    }
    SaydModule N(O, d, Variance::LeftRight);
    for (size_t g = 0; g < O->alg().generators().size(); ++g) {
        Word gw(1, static_cast<char>(g));
        SparseMat Rg = SparseMat::zero(R, d, d);
        for (int j = 0; j < d; ++j)
            for (const auto& [key, c] : M.coaction(j))
                addAt(Rg, key.second, j, c * pairing.evalWords(key.first, gw));
        N.setActionMatrix(static_cast<int>(g), Rg.transposed());
    }
    for (int j = 0; j < d; ++j) N.setCoaction(j, {{{Word(), j}, Scalar::one(R)}});

    // invariant cochains dual to top-degree classes on the enveloping side can
    // carry full degree in every slot, so the window must cover n+1 slots
    const int oCap = (degreeCap + 1) * hTensorCap;
    std::vector<SparseMat> acts;
    std::vector<Scalar> cous;
    for (int ell : subGens) {
        acts.push_back(pairing.actionMatrix(U->alg().gen(ell), oCap));
        cous.push_back(U->counitWord(Word(1, static_cast<char>(ell))));
    }

    VanEstInstance inst{U,
                        O,
                        subGens,
                        pairing,
                        M,
                        std::move(N),
                        QuotientCoalgebra(U.get(), subGens, oCap),
                        {},
                        {},
                        {},
                        {},
                        {},
                        {}};
    inst.B = coinvariantSubalgebra(O, acts, cous, oCap);
    // The coinvariant basis is homogeneous; restore the monomial degrees so
    // the tensor caps on the O side stay inside the realized window.
    BasisIndex ob(O->alg().basisUpTo(oCap));
    for (size_t i = 0; i < inst.B.inclusion.size(); ++i) {
        const SparseVec& v = inst.B.inclusion[i];
        int deg = v.empty() ? 0
                            : O->alg().degreeOf(ob.words[static_cast<size_t>(v.begin()->first)]);
        inst.B.algebra.degrees[i] = deg;
    }

    ComplexSpec hs;
    hs.kind = ComplexKind::ModuleCoalgebraCocyclic;
    hs.H = U;
    hs.M = &inst.M;
    hs.subGenerators = subGens;
    hs.degreeCap = degreeCap;
    hs.tensorCap = hTensorCap;
    hs.balancingCap = hTensorCap;
    inst.hCocyclic = build(hs);
    hs.kind = ComplexKind::ModuleCoalgebraContra;
    inst.hContra = build(hs);

    ComplexSpec os;
    os.kind = ComplexKind::QCoinvariantCyclic;
    os.H = O;
    os.M = &inst.N;
    os.A = &inst.B.algebra;
    os.degreeCap = degreeCap;
    os.tensorCap = oCap;
    os.balancingCap = oCap;
    inst.oCyclic = build(os);
    os.kind = ComplexKind::QCoinvariantCocyclic;
    inst.oContra = build(os);

    inst.notes = inst.B.issues;
    return inst;
}

namespace {

// S[c][b] = <b-th coinvariant basis element, c-th coset> through the pairing.
SparseMat slotPairMatrix(const VanEstInstance& inst) {
    Ring R = inst.pairing.ring();
    BasisIndex ob(inst.O->alg().basisUpTo(inst.C.degreeCap()));
    int bd = inst.B.algebra.dim;
    SparseMat S = SparseMat::zero(R, inst.C.dim(), bd);
    for (int c = 0; c < inst.C.dim(); ++c) {
        const Word& cw = inst.C.cosetWord(c);
        for (int b = 0; b < bd; ++b) {
            Scalar v = Scalar::zero(R);
            for (const auto& [k, coef] : inst.B.inclusion[static_cast<size_t>(b)])
                v += coef * inst.pairing.evalWords(cw, ob.words[static_cast<size_t>(k)]);
            addAt(S, c, b, v);
        }
    }
    return S;
}

// V[w][j] = value of the slotwise pairing between the j-th coalgebra-side
// chain and the w-th coinvariant-side chain at degree n.
SparseMat evaluationMatrix(const VanEstInstance& inst, const SparseMat& S, int n) {
    const ChainBasis& bh = inst.hCocyclic.bases.at(static_cast<size_t>(n));
    const ChainBasis& bo = inst.oCyclic.bases.at(static_cast<size_t>(n));
    Ring R = inst.pairing.ring();
    SparseMat V = SparseMat::zero(R, bo.dim, bh.dim);
    for (int j = 0; j < bh.dim; ++j) {
        SparseVec hAmb = bh.lift(R, j);
        for (int w = 0; w < bo.dim; ++w) {
            SparseVec oAmb = bo.lift(R, w);
            Scalar val = Scalar::zero(R);
            for (const auto& [ph, ah] : hAmb) {
                const auto& [mi, cslots] = bh.tuples[static_cast<size_t>(ph)];
                for (const auto& [po, ao] : oAmb) {
                    const auto& [ni, bslots] = bo.tuples[static_cast<size_t>(po)];
                    if (mi != ni) continue;
                    Scalar p = ah * ao;
                    for (size_t i = 0; i < cslots.size() && !p.isZero(); ++i)
                        p *= S.get(cslots[i], bslots[i]);
                    val += p;
                }
            }
            addAt(V, w, j, val);
        }
    }
    return V;
}

int sharedTop(const BuiltComplex& a, const BuiltComplex& b) {
    return std::min(a.object.maxDegree(), b.object.maxDegree());
}

} // namespace

ChainMap vanEstPsi(const VanEstInstance& inst) {
    SparseMat S = slotPairMatrix(inst);
    ChainMap out;
    int top = sharedTop(inst.hCocyclic, inst.oContra);
    for (int n = 0; n <= top; ++n) {
        SparseMat V = evaluationMatrix(inst, S, n);
        if (V.rows != V.cols)
            throw DegeneratePairingError("degree " + std::to_string(n) + " chain spaces have sizes " +
                                         std::to_string(V.cols) + " and " + std::to_string(V.rows));
        if (!isInvertible(V))
            throw DegeneratePairingError("evaluation pairing is singular at degree " +
                                         std::to_string(n));
        SparseMat D = dualityPairing(inst.oContra, inst.oCyclic, n);
        if (!isInvertible(D))
            throw DegeneratePairingError("duality pairing on the coinvariant side is singular "
                                         "at degree " + std::to_string(n));
        out.mats.push_back(inverseMatrix(D.transposed()) * V);
    }
    auto issues = checkChainMap(inst.hCocyclic, inst.oContra, out.mats);
    if (!issues.empty()) throw MorphismFailureError(issues[0]);
    return out;
}

ChainMap vanEstPhi(const VanEstInstance& inst) {
    SparseMat S = slotPairMatrix(inst);
    ChainMap out;
    int top = sharedTop(inst.oCyclic, inst.hContra);
    for (int n = 0; n <= top; ++n) {
        SparseMat V = evaluationMatrix(inst, S, n);
        if (V.rows != V.cols)
            throw DegeneratePairingError("degree " + std::to_string(n) + " chain spaces have sizes " +
                                         std::to_string(V.cols) + " and " + std::to_string(V.rows));
        if (!isInvertible(V))
            throw DegeneratePairingError("evaluation pairing is singular at degree " +
                                         std::to_string(n));
        SparseMat D = dualityPairing(inst.hContra, inst.hCocyclic, n);
        if (!isInvertible(D))
            throw DegeneratePairingError("duality pairing on the coalgebra side is singular "
                                         "at degree " + std::to_string(n));
        out.mats.push_back(inverseMatrix(D.transposed()) * V.transposed());
    }
    auto issues = checkChainMap(inst.oCyclic, inst.hContra, out.mats);
    if (!issues.empty()) throw MorphismFailureError(issues[0]);
    return out;
}

std::vector<std::string> checkChainMap(const BuiltComplex& source, const BuiltComplex& target,
                                       const std::vector<SparseMat>& mats) {
    std::vector<std::string> issues;
    const ParaCyclicObject& S = source.object;
    const ParaCyclicObject& T = target.object;
    if (S.direction() != T.direction()) {
        issues.push_back("source and target have different directions");
        return issues;
    }
    int top = std::min({S.maxDegree(), T.maxDegree(), static_cast<int>(mats.size()) - 1});
    for (int n = 0; n <= top; ++n)
        if (mats[static_cast<size_t>(n)].rows != T.dim(n) ||
            mats[static_cast<size_t>(n)].cols != S.dim(n))
            issues.push_back("matrix shape mismatch at degree " + std::to_string(n));
    if (!issues.empty()) return issues;
    bool co = S.direction() == Direction::Cocyclic;
    auto mat = [&](int n) -> const SparseMat& { return mats[static_cast<size_t>(n)]; };
    for (int n = 1; n <= top; ++n)
        for (int i = 0; i <= n; ++i) {
            try {
                const SparseMat& fs = S.face(n, i);
                const SparseMat& ft = T.face(n, i);
                bool ok = co ? ft * mat(n - 1) == mat(n) * fs
                             : mat(n - 1) * fs == ft * mat(n);
                if (!ok)
                    issues.push_back("face " + std::to_string(i) + " at degree " +
                                     std::to_string(n));
            } catch (const std::out_of_range&) {
            }
        }
    for (int n = 0; n < top; ++n)
        for (int j = 0; j <= n; ++j) {
            try {
                const SparseMat& ss = S.degeneracy(n, j);
                const SparseMat& st = T.degeneracy(n, j);
                bool ok = co ? st * mat(n + 1) == mat(n) * ss
                             : mat(n + 1) * ss == st * mat(n);
                if (!ok)
                    issues.push_back("degeneracy " + std::to_string(j) + " at degree " +
                                     std::to_string(n));
            } catch (const std::out_of_range&) {
            }
        }
    for (int n = 0; n <= top; ++n) {
        try {
            if (!(T.cyclic(n) * mat(n) == mat(n) * S.cyclic(n)))
                issues.push_back("cyclic operator at degree " + std::to_string(n));
        } catch (const std::out_of_range&) {
        }
    }
    return issues;
}

// ---------------------------------------------------------------------------
// Janus pairing

TupleIndex plainTuples(const CoefficientAlgebra& A, int n) {
    TupleIndex out;
    std::vector<int> cur(static_cast<size_t>(n) + 1, 0);
    while (true) {
        out.pos.emplace(cur, static_cast<int>(out.tuples.size()));
        out.tuples.push_back(cur);
        int i = n;
        while (i >= 0 && cur[static_cast<size_t>(i)] == A.dim - 1) cur[static_cast<size_t>(i--)] = 0;
        if (i < 0) break;
        ++cur[static_cast<size_t>(i)];
    }
    return out;
}

SparseVec janusPair(const ComplexSpec& coalgebraSpec, const BuiltComplex& coalgebraSide,
                    const BuiltComplex& algebraSide, const CoefficientAlgebra& A,
                    const SparseVec& cCochain, const SparseVec& aCochain, int n) {
    const HopfAlgebra& H = *coalgebraSpec.H;
    Ring R = H.ring();
    // c |> (ab) = (c1 |> a)(c2 |> b) on generators and basis pairs.
    for (size_t g = 0; g < H.alg().generators().size(); ++g) {
        Word gw(1, static_cast<char>(g));
        TensorElement cop = H.coproductWord(gw);
        for (int i = 0; i < A.dim; ++i)
            for (int j = 0; j < A.dim; ++j) {
                const auto& pij = A.mult[static_cast<size_t>(i)][static_cast<size_t>(j)];
                if (!pij) continue;
                SparseVec lhs = A.actWord(gw, *pij);
                SparseVec rhs;
                SparseVec ei{{i, Scalar::one(R)}}, ej{{j, Scalar::one(R)}};
                for (const auto& [legs, c] : cop.terms())
                    sparseAxpy(rhs, c,
                               A.multiply(A.actWord(legs[0], ei), A.actWord(legs[1], ej)));
                if (lhs != rhs)
                    throw NotEquivariantError("generator " + H.alg().generators()[g].name +
                                              " on basis pair (" + std::to_string(i) + ", " +
                                              std::to_string(j) + ")");
            }
    }

    QuotientCoalgebra C(&H, coalgebraSpec.subGenerators,
                        coalgebraSpec.tensorCap + coalgebraSpec.balancingCap);
    std::vector<SparseMat> act;
    act.reserve(static_cast<size_t>(C.dim()));
    for (int c = 0; c < C.dim(); ++c) {
        SparseMat m = SparseMat::zero(R, A.dim, A.dim);
        for (int k = 0; k < A.dim; ++k) {
            SparseVec col = A.actWord(C.cosetWord(c), SparseVec{{k, Scalar::one(R)}});
            for (const auto& [r, v] : col) addAt(m, r, k, v);
        }
        act.push_back(std::move(m));
    }

    const ChainBasis& bc = coalgebraSide.bases.at(static_cast<size_t>(n));
    const ChainBasis& ba = algebraSide.bases.at(static_cast<size_t>(n));
    SparseVec cAmb, aAmb;
    for (const auto& [k, v] : cCochain) sparseAxpy(cAmb, v, bc.lift(R, k));
    for (const auto& [k, v] : aCochain) sparseAxpy(aAmb, v, ba.lift(R, k));

    TupleIndex T = plainTuples(A, n);
    SparseVec chi;
    std::vector<int> tup(static_cast<size_t>(n) + 1, 0);
    for (const auto& [pc, wc] : cAmb) {
        const auto& [mu, cslots] = bc.tuples[static_cast<size_t>(pc)];
        for (const auto& [pa, wa] : aAmb) {
            const auto& [jc, aslots] = ba.tuples[static_cast<size_t>(pa)];
            if (jc != mu) continue;
            Scalar base = wc * wa;
            // Walk the support of each slot column product recursively.
            std::function<void(int, const Scalar&)> rec = [&](int slot, const Scalar& acc) {
                if (slot > n) {
                    auto it = chi.find(T.pos.at(tup));
                    if (it == chi.end())
                        chi.emplace(T.pos.at(tup), acc);
                    else {
                        it->second = it->second + acc;
                        if (it->second.isZero()) chi.erase(it);
                    }
                    return;
                }
                const SparseVec& row =
                    act[static_cast<size_t>(cslots[static_cast<size_t>(slot)])]
                        .row[static_cast<size_t>(aslots[static_cast<size_t>(slot)])];
                for (const auto& [t, v] : row) {
                    tup[static_cast<size_t>(slot)] = t;
                    rec(slot + 1, acc * v);
                }
            };
            // act rows index outputs; we need entries act[c](aslot, t) over t,
            // i.e. the aslot-th row of the action matrix.
            rec(0, base);
        }
    }
    return chi;
}

SparseVec algebraCoboundary(const CoefficientAlgebra& A, const SparseVec& chi, int n) {
    Ring R = A.ring();
    TupleIndex Tn = plainTuples(A, n);
    TupleIndex Tm = plainTuples(A, n + 1);
    SparseVec out;
    auto chiAt = [&](const std::vector<int>& t) -> Scalar {
        auto it = chi.find(Tn.pos.at(t));
        return it == chi.end() ? Scalar::zero(R) : it->second;
    };
    auto prod = [&](int i, int j) -> const SparseVec& {
        const auto& p = A.mult[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (!p) throw Error("product escapes the realized window");
        return *p;
    };
    for (size_t w = 0; w < Tm.tuples.size(); ++w) {
        const std::vector<int>& u = Tm.tuples[w];
        Scalar val = Scalar::zero(R);
        Scalar sign = Scalar::one(R);
        for (int i = 0; i <= n; ++i) {
            std::vector<int> t(u.begin(), u.end());
            t.erase(t.begin() + i + 1);
            for (const auto& [k, c] : prod(u[static_cast<size_t>(i)], u[static_cast<size_t>(i) + 1])) {
                t[static_cast<size_t>(i)] = k;
                val += sign * c * chiAt(t);
            }
            sign = -sign;
        }
        std::vector<int> t(u.begin(), u.end() - 1);
        for (const auto& [k, c] : prod(u.back(), u[0])) {
            t[0] = k;
            val += sign * c * chiAt(t);
        }
        if (!val.isZero()) out.emplace(static_cast<int>(w), val);
    }
    return out;
}

} // namespace hopfcyc

#include "hopfcyc/hopf.hpp"

#include "hopfcyc/errors.hpp"

#include <algorithm>

namespace hopfcyc {

BasisIndex::BasisIndex(std::vector<Word> ws) : words(std::move(ws)) {
    for (int i = 0; i < static_cast<int>(words.size()); ++i) pos.emplace(words[i], i);
}

int BasisIndex::indexOf(const Word& w) const {
    auto it = pos.find(w);
    if (it == pos.end())
        throw DegreeOverflowError("word outside the realized basis");
    return it->second;
}

SparseVec BasisIndex::toVec(const AlgebraElement& x) const {
    SparseVec v;
    for (const auto& [w, c] : x.terms()) v.emplace(indexOf(w), c);
    return v;
}

AlgebraElement BasisIndex::toElement(const Presentation* p, const SparseVec& v) const {
    AlgebraElement x(p);
    for (const auto& [i, c] : v) x.addTermUnchecked(words.at(i), c);
    return x;
}

void HopfAlgebra::setGeneratorStructure(int gen, TensorElement coproduct, Scalar counit,
                                        AlgebraElement antipode, AlgebraElement antipodeInv) {
    if (coproduct.arity() != 2)
        throw SlotMismatchError("coproduct of a generator must have arity 2");
    cop_.at(gen) = std::move(coproduct);
    cou_.at(gen) = std::move(counit);
    anti_.at(gen) = std::move(antipode);
    antiInv_.at(gen) = std::move(antipodeInv);
}

TensorElement HopfAlgebra::coproductWord(const Word& w) const {
    {
        std::lock_guard<std::mutex> lk(cacheMu_);
        auto it = copCache_.find(w);
        if (it != copCache_.end()) return it->second;
    }
    TensorElement result;
    if (w.empty()) {
        result = TensorElement::tensorOf({alg_->unit(), alg_->unit()});
    } else {
        int last = static_cast<unsigned char>(w.back());
        result = coproductWord(w.substr(0, w.size() - 1)) * cop_.at(last);
    }
    {
        std::lock_guard<std::mutex> lk(cacheMu_);
        copCache_.emplace(w, result);
    }
    return result;
}

TensorElement HopfAlgebra::coproduct(const AlgebraElement& x) const {
    TensorElement out({alg_.get(), alg_.get()});
    for (const auto& [w, c] : x.terms()) out = out + coproductWord(w).scaled(c);
    return out;
}

TensorElement HopfAlgebra::coproductIter(const AlgebraElement& x, int slots) const {
    if (slots < 1) throw SlotMismatchError("iterated coproduct needs at least one slot");
    if (slots == 1) return TensorElement::tensorOf({x});
    TensorElement out = coproduct(x);
    for (int s = 2; s < slots; ++s)
        out = out.spliceSlot(0, [&](const Word& u) { return coproductWord(u); });
    return out;
}

Scalar HopfAlgebra::counitWord(const Word& w) const {
    Scalar out = Scalar::one(alg_->ring());
    for (char ch : w) out = out * cou_.at(static_cast<unsigned char>(ch));
    return out;
}

Scalar HopfAlgebra::counit(const AlgebraElement& x) const {
    Scalar out = Scalar::zero(alg_->ring());
    for (const auto& [w, c] : x.terms()) out = out + counitWord(w) * c;
    return out;
}

AlgebraElement HopfAlgebra::applyAnti(const std::vector<AlgebraElement>& table,
                                      const Word& w) const {
    AlgebraElement out = alg_->unit();
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out = out * table.at(static_cast<unsigned char>(*it));
    return out;
}

AlgebraElement HopfAlgebra::antipodeWord(const Word& w) const { return applyAnti(anti_, w); }

AlgebraElement HopfAlgebra::antipode(const AlgebraElement& x) const {
    AlgebraElement out = alg_->zeroElement();
    for (const auto& [w, c] : x.terms()) out = out + antipodeWord(w).scaled(c);
    return out;
}

AlgebraElement HopfAlgebra::antipodeInvWord(const Word& w) const {
    return applyAnti(antiInv_, w);
}

AlgebraElement HopfAlgebra::antipodeInv(const AlgebraElement& x) const {
    AlgebraElement out = alg_->zeroElement();
    for (const auto& [w, c] : x.terms()) out = out + antipodeInvWord(w).scaled(c);
    return out;
}

std::vector<std::string> HopfAlgebra::verifyHopfAxioms(int degreeBound) const {
    std::vector<std::string> issues;
    auto push = [&](const std::string& s) {
        if (issues.size() < 50) issues.push_back(s);
    };
    Ring R = alg_->ring();
    auto basis = alg_->basisUpTo(degreeBound);

    for (const Word& w : basis) {
        std::string ws = alg_->wordStr(w);
        try {
            TensorElement dw = coproductWord(w);
            TensorElement expect = TensorElement::tensorOf({alg_->wordElement(w)});
            TensorElement epsLeft =
                dw.contractSlot(0, [&](const Word& u) { return counitWord(u); });
            if (!(epsLeft == expect))
                push("counit axiom (eps x id)Delta fails on " + ws);
            TensorElement epsRight =
                dw.contractSlot(1, [&](const Word& u) { return counitWord(u); });
            if (!(epsRight == expect))
                push("counit axiom (id x eps)Delta fails on " + ws);

            TensorElement l3 = dw.spliceSlot(0, [&](const Word& u) { return coproductWord(u); });
            TensorElement r3 = dw.spliceSlot(1, [&](const Word& u) { return coproductWord(u); });
            if (!(l3 == r3)) push("coassociativity fails on " + ws);

            AlgebraElement sLeft = alg_->zeroElement();
            AlgebraElement sRight = alg_->zeroElement();
            for (const auto& [t, c] : dw.terms()) {
                sLeft = sLeft + (antipodeWord(t[0]) * alg_->wordElement(t[1])).scaled(c);
                sRight = sRight + (alg_->wordElement(t[0]) * antipodeWord(t[1])).scaled(c);
            }
            AlgebraElement eps1 = alg_->unit().scaled(counitWord(w));
            if (!(sLeft == eps1)) push("antipode axiom m(S x id)Delta fails on " + ws);
            if (!(sRight == eps1)) push("antipode axiom m(id x S)Delta fails on " + ws);

            if (!(antipodeInv(antipodeWord(w)) == alg_->wordElement(w)))
                push("S^-1(S(w)) != w on " + ws);
            if (!(antipode(antipodeInvWord(w)) == alg_->wordElement(w)))
                push("S(S^-1(w)) != w on " + ws);
        } catch (const DegreeOverflowError&) {
            // structure maps escape the Cartan window at this word; skip
        }
    }

    size_t pairChecks = 0;
    Scalar one = Scalar::one(R);
    for (const Word& u : basis) {
        if (pairChecks >= 400) break;
        for (const Word& v : basis) {
            if (pairChecks >= 400) break;
            if (alg_->degreeOf(u) + alg_->degreeOf(v) > degreeBound) continue;
            if (!alg_->withinCartanWindow(u + v)) continue;
            try {
                AlgebraElement prod = alg_->normalize({{u + v, one}});
                if (!(coproduct(prod) == coproductWord(u) * coproductWord(v)))
                    push("Delta not multiplicative on " + alg_->wordStr(u) + " , " +
                         alg_->wordStr(v));
                if (!(counit(prod) == counitWord(u) * counitWord(v)))
                    push("eps not multiplicative on " + alg_->wordStr(u) + " , " +
                         alg_->wordStr(v));
                if (!(antipode(prod) == antipodeWord(v) * antipodeWord(u)))
                    push("S not antimultiplicative on " + alg_->wordStr(u) + " , " +
                         alg_->wordStr(v));
                ++pairChecks;
            } catch (const DegreeOverflowError&) {
            }
        }
    }
    return issues;
}

bool HopfAlgebra::isCommutative(int degreeBound) const {
    auto basis = alg_->basisUpTo(degreeBound);
    Scalar one = Scalar::one(alg_->ring());
    size_t checks = 0;
    for (const Word& u : basis)
        for (const Word& v : basis) {
            if (checks >= 300) return true;
            if (alg_->degreeOf(u) + alg_->degreeOf(v) > degreeBound) continue;
            if (!alg_->withinCartanWindow(u + v)) continue;
            try {
                if (!(alg_->normalize({{u + v, one}}) == alg_->normalize({{v + u, one}})))
                    return false;
                ++checks;
            } catch (const DegreeOverflowError&) {
            }
        }
    return true;
}

bool HopfAlgebra::isCocommutative(int degreeBound) const {
    auto basis = alg_->basisUpTo(degreeBound);
    for (const Word& w : basis) {
        try {
            TensorElement dw = coproductWord(w);
            if (!(dw == dw.permuted({1, 0}))) return false;
        } catch (const DegreeOverflowError&) {
        }
    }
    return true;
}

std::shared_ptr<HopfAlgebra> semiclassicalLimit(const HopfAlgebra& H) {
    const Presentation& p = H.alg();
    if (p.ring().kind != RingKind::Series)
        throw MixedRingError("semiclassical limit requires an h-adic presentation, got " +
                             p.ring().name());
    Ring Q = Ring::rationals();
    auto np = std::make_shared<Presentation>(p.name() + "_cl", Q, p.generators());
    np->setCartanWindow(p.cartanWindow());
    np->setTruncationDegree(p.truncationDegree());
    for (const Rule& r : p.rules()) {
        std::map<Word, Scalar> rhs;
        for (const auto& [w, c] : r.rhs) {
            Scalar c0 = c.modH();
            if (!c0.isZero()) rhs.emplace(w, c0);
        }
        np->addRule(r.lhs, std::move(rhs));
    }
    auto out = std::make_shared<HopfAlgebra>(np);
    for (size_t g = 0; g < p.generators().size(); ++g) {
        Word gw(1, static_cast<char>(g));
        TensorElement cop({np.get(), np.get()});
        TensorElement srcCop = H.coproductWord(gw);
        for (const auto& [t, c] : srcCop.terms()) {
            Scalar c0 = c.modH();
            if (!c0.isZero()) cop.addTerm(t, c0);
        }
        AlgebraElement anti(np.get()), antiInv(np.get());
        AlgebraElement srcAnti = H.antipodeWord(gw);
        AlgebraElement srcAntiInv = H.antipodeInvWord(gw);
        for (const auto& [w, c] : srcAnti.terms()) {
            Scalar c0 = c.modH();
            if (!c0.isZero()) anti.addTermUnchecked(w, c0);
        }
        for (const auto& [w, c] : srcAntiInv.terms()) {
            Scalar c0 = c.modH();
            if (!c0.isZero()) antiInv.addTermUnchecked(w, c0);
        }
        out->setGeneratorStructure(static_cast<int>(g), std::move(cop),
                                   H.counitWord(gw).modH(), std::move(anti),
                                   std::move(antiInv));
    }
    return out;
}

QuotientCoalgebra::QuotientCoalgebra(const HopfAlgebra* H, std::vector<int> subGens,
                                     int degreeCap)
    : H_(H), subGens_(std::move(subGens)), cap_(degreeCap) {
    const Presentation& p = H->alg();
    std::set<char> allowed;
    for (int g : subGens_) allowed.insert(static_cast<char>(g));
    auto inside = [&](const Word& w) {
        return std::all_of(w.begin(), w.end(), [&](char c) { return allowed.count(c) > 0; });
    };
    for (int g : subGens_) {
        Word gw(1, static_cast<char>(g));
        std::string gn = p.generators().at(g).name;
        TensorElement cop = H->coproductWord(gw);
        AlgebraElement anti = H->antipodeWord(gw);
        AlgebraElement antiInv = H->antipodeInvWord(gw);
        for (const auto& [t, c] : cop.terms())
            if (!inside(t[0]) || !inside(t[1]))
                throw NotSubHopfError("coproduct of " + gn + " leaves the span of the chosen generators");
        for (const auto& [w, c] : anti.terms())
            if (!inside(w))
                throw NotSubHopfError("antipode of " + gn + " leaves the span of the chosen generators");
        for (const auto& [w, c] : antiInv.terms())
            if (!inside(w))
                throw NotSubHopfError("inverse antipode of " + gn + " leaves the span of the chosen generators");
    }

    basis_ = BasisIndex(p.basisUpTo(cap_));
    Scalar one = Scalar::one(p.ring());
    int N = basis_.size();
    std::vector<SparseVec> rels;
    for (const Word& w : basis_.words) {
        for (int g : subGens_) {
            if (p.degreeOf(w) + p.generators().at(g).degree > cap_) continue;
            Word gw(1, static_cast<char>(g));
            try {
                AlgebraElement x = p.normalize({{w + gw, one}}) -
                                   p.wordElement(w).scaled(H->counitWord(gw));
                // coordinates are reversed so that echelon pivots eliminate
                // the larger words, leaving minimal coset representatives
                SparseVec rel;
                for (const auto& [idx, c] : basis_.toVec(x)) rel[N - 1 - idx] = c;
                rels.push_back(std::move(rel));
            } catch (const DegreeOverflowError&) {
                // relation leaves the realized window; its source word does too
            }
        }
    }
    quot_ = QuotientSpace(p.ring(), N, rels);
}

const Word& QuotientCoalgebra::cosetWord(int i) const {
    return basis_.words.at(basis_.size() - 1 - quot_.representative(i));
}

AlgebraElement QuotientCoalgebra::representative(int i) const {
    return H_->alg().wordElement(cosetWord(i));
}

SparseVec QuotientCoalgebra::reduce(const AlgebraElement& x) const {
    SparseVec rev;
    for (const auto& [idx, c] : basis_.toVec(x)) rev[basis_.size() - 1 - idx] = c;
    return quot_.reduce(rev);
}

SparseVec QuotientCoalgebra::actLeft(const AlgebraElement& h, int i) const {
    return reduce(h * representative(i));
}

std::map<std::pair<int, int>, Scalar> QuotientCoalgebra::coproductCoset(int i) const {
    std::map<std::pair<int, int>, Scalar> out;
    Scalar zero = Scalar::zero(H_->ring());
    TensorElement dw = H_->coproductWord(cosetWord(i));
    for (const auto& [t, c] : dw.terms()) {
        SparseVec lu = reduce(H_->alg().wordElement(t[0]));
        SparseVec rv = reduce(H_->alg().wordElement(t[1]));
        for (const auto& [a, ca] : lu)
            for (const auto& [b, cb] : rv) {
                auto key = std::make_pair(a, b);
                auto it = out.emplace(key, zero).first;
                it->second = it->second + c * ca * cb;
                if (it->second.isZero()) out.erase(it);
            }
    }
    return out;
}

std::map<std::pair<Word, int>, Scalar> QuotientCoalgebra::coactionCoset(int i) const {
    std::map<std::pair<Word, int>, Scalar> out;
    Scalar zero = Scalar::zero(H_->ring());
    TensorElement dw = H_->coproductWord(cosetWord(i));
    for (const auto& [t, c] : dw.terms()) {
        SparseVec rv = reduce(H_->alg().wordElement(t[1]));
        for (const auto& [b, cb] : rv) {
            auto key = std::make_pair(t[0], b);
            auto it = out.emplace(key, zero).first;
            it->second = it->second + c * cb;
            if (it->second.isZero()) out.erase(it);
        }
    }
    return out;
}

Scalar QuotientCoalgebra::counitCoset(int i) const { return H_->counitWord(cosetWord(i)); }

} // namespace hopfcyc

#include "hopfcyc/builders.hpp"

#include "hopfcyc/errors.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace hopfcyc {

namespace {

using Label = std::pair<int, std::vector<int>>;
using LabelVec = std::map<Label, Scalar>;

SparseVec basisVec(int i, const Ring& R) { return SparseVec{{i, Scalar::one(R)}}; }

void addAt(SparseMat& m, int r, int c, const Scalar& v) {
    if (v.isZero()) return;
    auto& row = m.row[r];
    auto it = row.find(c);
    if (it == row.end()) {
        row.emplace(c, v);
    } else {
        it->second += v;
        if (it->second.isZero()) row.erase(it);
    }
}

// Accumulation into a Scalar-valued map without default-constructing entries
// (a default Scalar carries the rational ring).
template <typename Map, typename Key>
void addScaled(Map& m, const Key& k, const Scalar& c) {
    if (c.isZero()) return;
    auto it = m.find(k);
    if (it == m.end()) {
        m.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.isZero()) m.erase(it);
    }
}

void addLabel(LabelVec& lv, int coeff, const std::vector<int>& slots, const Scalar& c) {
    if (c.isZero()) return;
    auto key = Label{coeff, slots};
    auto it = lv.find(key);
    if (it == lv.end()) {
        lv.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second.isZero()) lv.erase(it);
    }
}

// Expands per-slot vectors into (index tuple, coefficient) pairs.
void expandSlots(const std::vector<SparseVec>& sv, size_t k, std::vector<int>& cur,
                 const Scalar& c,
                 const std::function<void(const std::vector<int>&, const Scalar&)>& sink) {
    if (c.isZero()) return;
    if (k == sv.size()) {
        sink(cur, c);
        return;
    }
    for (const auto& [i, ci] : sv[k]) {
        cur.push_back(i);
        expandSlots(sv, k + 1, cur, c * ci, sink);
        cur.pop_back();
    }
}

std::optional<SparseVec> toIndexed(const ChainBasis& b, const LabelVec& lv) {
    SparseVec out;
    for (const auto& [label, c] : lv) {
        auto it = b.pos.find(label);
        if (it == b.pos.end()) return std::nullopt;
        out[it->second] = c;
    }
    return out;
}

SparseMat matFromRows(const Ring& R, int rows, int cols, std::vector<SparseVec> rs) {
    SparseMat m = SparseMat::zero(R, rows, cols);
    m.row = std::move(rs);
    m.row.resize(rows);
    return m;
}

} // namespace

// ---------------------------------------------------------------------------
// CoefficientAlgebra

SparseVec CoefficientAlgebra::multiply(const SparseVec& a, const SparseVec& b) const {
    SparseVec out;
    for (const auto& [i, ci] : a)
        for (const auto& [j, cj] : b) {
            if (!mult[i][j])
                throw DegreeOverflowError("product " + labels[i] + " * " + labels[j] +
                                          " escapes the realized algebra window");
            sparseAxpy(out, ci * cj, *mult[i][j]);
        }
    return out;
}

SparseVec CoefficientAlgebra::actWord(const Word& w, const SparseVec& v) const {
    SparseVec out = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out = action.at(static_cast<unsigned char>(*it)).apply(out);
    return out;
}

SparseVec CoefficientAlgebra::act(const AlgebraElement& h, const SparseVec& v) const {
    SparseVec out;
    for (const auto& [w, c] : h.terms()) sparseAxpy(out, c, actWord(w, v));
    return out;
}

CoactionTerms CoefficientAlgebra::coactionOf(const SparseVec& v) const {
    CoactionTerms out;
    for (const auto& [i, ci] : v)
        for (const auto& [key, c] : coaction.at(i)) {
            auto it = out.find(key);
            if (it == out.end()) {
                out.emplace(key, ci * c);
            } else {
                it->second += ci * c;
                if (it->second.isZero()) out.erase(it);
            }
        }
    return out;
}

std::vector<std::string> CoefficientAlgebra::checkModuleAlgebra() const {
    std::vector<std::string> issues;
    Ring R = ring();
    if (action.empty()) return {"no action data"};
    // Unit and associativity of the realized product table.
    for (int i = 0; i < dim; ++i) {
        SparseVec l = multiply(unit, basisVec(i, R));
        SparseVec r = multiply(basisVec(i, R), unit);
        if (l != basisVec(i, R) || r != basisVec(i, R))
            issues.push_back("unit fails at " + labels[i]);
    }
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                if (!mult[i][j] || !mult[j][k]) continue;
                try {
                    SparseVec l = multiply(*mult[i][j], basisVec(k, R));
                    SparseVec r = multiply(basisVec(i, R), *mult[j][k]);
                    if (l != r)
                        issues.push_back("associativity fails at (" + labels[i] + "," +
                                         labels[j] + "," + labels[k] + ")");
                } catch (const DegreeOverflowError&) {
                    continue;
                }
            }
    // The action respects the relations of H.
    const auto& P = H->alg();
    for (const auto& rule : P.rules()) {
        for (int i = 0; i < dim; ++i) {
            SparseVec l = actWord(rule.lhs, basisVec(i, R));
            SparseVec r;
            for (const auto& [w, c] : rule.rhs) sparseAxpy(r, c, actWord(w, basisVec(i, R)));
            if (l != r) {
                issues.push_back("action breaks rule " + P.wordStr(rule.lhs) + " at " +
                                 labels[i]);
                break;
            }
        }
    }
    // h |> 1 = eps(h) 1 and the twisted Leibniz rule on generators.
    for (size_t g = 0; g < P.generators().size(); ++g) {
        Word gw(1, static_cast<char>(g));
        SparseVec lhs = actWord(gw, unit);
        SparseVec rhs = sparseScale(unit, H->counitWord(gw));
        if (lhs != rhs) issues.push_back("unit is not acted through the counit by " +
                                         P.generators()[g].name);
        TensorElement cop = H->coproductWord(gw);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                if (!mult[i][j]) continue;
                try {
                    SparseVec lv = actWord(gw, *mult[i][j]);
                    SparseVec rv;
                    for (const auto& [wt, c] : cop.terms())
                        sparseAxpy(rv, c,
                                   multiply(actWord(wt[0], basisVec(i, R)),
                                            actWord(wt[1], basisVec(j, R))));
                    if (lv != rv) {
                        issues.push_back("Leibniz fails for " + P.generators()[g].name +
                                         " at (" + labels[i] + "," + labels[j] + ")");
                    }
                } catch (const DegreeOverflowError&) {
                    continue;
                }
            }
    }
    return issues;
}

std::vector<std::string> CoefficientAlgebra::checkComoduleAlgebra() const {
    std::vector<std::string> issues;
    Ring R = ring();
    if (coaction.empty()) return {"no coaction data"};
    using Key = std::tuple<Word, Word, int>;
    // Coassociativity and counit.
    for (int i = 0; i < dim; ++i) {
        std::map<Key, Scalar> lhs, rhs;
        for (const auto& [key, c] : coaction[i]) {
            const auto& [w, j] = key;
            TensorElement cop = H->coproductWord(w);
            if (coactsLeft) {
                // (Delta (x) id) rho = (id (x) rho) rho
                for (const auto& [wt, cc] : cop.terms())
                    addScaled(lhs, Key{wt[0], wt[1], j}, c * cc);
                for (const auto& [key2, c2] : coaction[j])
                    addScaled(rhs, Key{w, key2.first, key2.second}, c * c2);
            } else {
                // (rho (x) id) rho = (id (x) Delta) rho
                for (const auto& [key2, c2] : coaction[j])
                    addScaled(lhs, Key{key2.first, w, key2.second}, c * c2);
                for (const auto& [wt, cc] : cop.terms())
                    addScaled(rhs, Key{wt[0], wt[1], j}, c * cc);
            }
        }
        auto clean = [](std::map<Key, Scalar>& m) {
            for (auto it = m.begin(); it != m.end();)
                it = it->second.isZero() ? m.erase(it) : std::next(it);
        };
        clean(lhs);
        clean(rhs);
        if (lhs != rhs) issues.push_back("coassociativity fails at " + labels[i]);
        SparseVec cu;
        for (const auto& [key, c] : coaction[i])
            sparseAxpy(cu, c * H->counitWord(key.first), basisVec(key.second, R));
        if (cu != basisVec(i, R)) issues.push_back("counit fails at " + labels[i]);
    }
    // rho(1) = 1 (x) 1 and multiplicativity.
    {
        CoactionTerms u = coactionOf(unit);
        CoactionTerms expect;
        for (const auto& [j, c] : unit) expect[{Word(), j}] = c;
        if (u != expect) issues.push_back("coaction of the unit is not trivial");
    }
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            if (!mult[i][j]) continue;
            std::map<Word, SparseVec> lhs, rhs;
            for (const auto& [key, c] : coactionOf(*mult[i][j]))
                sparseAxpy(lhs[key.first], c, basisVec(key.second, R));
            bool skip = false;
            for (const auto& [ka, ca] : coaction[i]) {
                for (const auto& [kb, cb] : coaction[j]) {
                    if (!mult[ka.second][kb.second]) {
                        skip = true;
                        break;
                    }
                    AlgebraElement prod = coactsLeft
                        ? H->alg().wordElement(ka.first) * H->alg().wordElement(kb.first)
                        : H->alg().wordElement(ka.first) * H->alg().wordElement(kb.first);
                    for (const auto& [w, cw] : prod.terms())
                        sparseAxpy(rhs[w], ca * cb * cw, *mult[ka.second][kb.second]);
                }
                if (skip) break;
            }
            if (skip) continue;
            auto clean = [](std::map<Word, SparseVec>& m) {
                for (auto it = m.begin(); it != m.end();)
                    it = it->second.empty() ? m.erase(it) : std::next(it);
            };
            clean(lhs);
            clean(rhs);
            if (lhs != rhs)
                issues.push_back("coaction is not multiplicative at (" + labels[i] + "," +
                                 labels[j] + ")");
        }
    return issues;
}

// ---------------------------------------------------------------------------
// Factories

CoefficientAlgebra adjointModuleAlgebra(std::shared_ptr<HopfAlgebra> H, int degreeCap) {
    CoefficientAlgebra A;
    A.H = H;
    Ring R = H->ring();
    const auto& P = H->alg();
    BasisIndex basis(P.basisUpTo(degreeCap));
    A.dim = basis.size();
    for (const auto& w : basis.words) A.labels.push_back(P.wordStr(w));
    A.degrees.assign(A.dim, 0);
    A.unit = basisVec(basis.indexOf(Word()), R);
    A.mult.assign(A.dim, std::vector<std::optional<SparseVec>>(A.dim));
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            AlgebraElement p = P.wordElement(basis.words[i]) * P.wordElement(basis.words[j]);
            SparseVec v;
            bool ok = true;
            for (const auto& [w, c] : p.terms()) {
                if (basis.pos.find(w) == basis.pos.end()) {
                    ok = false;
                    break;
                }
                v[basis.pos.at(w)] = c;
            }
            if (ok) A.mult[i][j] = std::move(v);
        }
    for (size_t g = 0; g < P.generators().size(); ++g) {
        Word gw(1, static_cast<char>(g));
        SparseMat m = SparseMat::zero(R, A.dim, A.dim);
        TensorElement cop = H->coproductWord(gw);
        for (int i = 0; i < A.dim; ++i) {
            for (const auto& [wt, c] : cop.terms()) {
                AlgebraElement e = P.wordElement(wt[0]) * P.wordElement(basis.words[i]) *
                                   H->antipodeWord(wt[1]);
                for (const auto& [w, cw] : e.terms()) {
                    if (basis.pos.find(w) == basis.pos.end())
                        throw DegreeOverflowError("adjoint action escapes the realized basis");
                    addAt(m, basis.pos.at(w), i, c * cw);
                }
            }
        }
        A.action.push_back(std::move(m));
    }
    return A;
}

CoefficientAlgebra planeModuleAlgebra(std::shared_ptr<HopfAlgebra> H, int cap) {
    CoefficientAlgebra A;
    A.H = H;
    Ring R = H->ring();
    const std::string& name = H->alg().name();
    bool quantum = name == "uq_sl2";
    if (!quantum && name != "u_sl2")
        throw Error("planeModuleAlgebra: unsupported algebra " + name);
    std::vector<std::pair<int, int>> mono; // (a, b) with a + b <= cap
    std::map<std::pair<int, int>, int> idx;
    for (int d = 0; d <= cap; ++d)
        for (int a = d; a >= 0; --a) {
            idx[{a, d - a}] = static_cast<int>(mono.size());
            mono.push_back({a, d - a});
        }
    A.dim = static_cast<int>(mono.size());
    for (auto [a, b] : mono)
        A.labels.push_back("x^" + std::to_string(a) + " y^" + std::to_string(b));
    A.degrees.assign(A.dim, 0);
    A.unit = basisVec(idx.at({0, 0}), R);
    Scalar q = quantum ? Scalar::varPower(R, 1) : Scalar::one(R);
    A.mult.assign(A.dim, std::vector<std::optional<SparseVec>>(A.dim));
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            auto [a, b] = mono[i];
            auto [c, d] = mono[j];
            SparseVec v;
            if (a + b + c + d <= cap) {
                Scalar coeff = quantum ? q.pow(b * c) : Scalar::one(R);
                v[idx.at({a + c, b + d})] = coeff;
            }
            A.mult[i][j] = std::move(v); // zero beyond the cap: graded quotient
        }
    auto diag = [&](const std::function<Scalar(int, int)>& f) {
        SparseMat m = SparseMat::zero(R, A.dim, A.dim);
        for (int i = 0; i < A.dim; ++i) addAt(m, i, i, f(mono[i].first, mono[i].second));
        return m;
    };
    auto shift = [&](bool lower, const std::function<Scalar(int, int)>& f) {
        // lower: x^a y^b -> f * x^{a-1} y^{b+1}; else x^{a+1} y^{b-1}
        SparseMat m = SparseMat::zero(R, A.dim, A.dim);
        for (int i = 0; i < A.dim; ++i) {
            auto [a, b] = mono[i];
            if (lower && a > 0) addAt(m, idx.at({a - 1, b + 1}), i, f(a, b));
            if (!lower && b > 0) addAt(m, idx.at({a + 1, b - 1}), i, f(a, b));
        }
        return m;
    };
    if (!quantum) {
        // F, H, E
        A.action.push_back(shift(true, [&](int a, int) { return Scalar::fromInt(R, a); }));
        A.action.push_back(diag([&](int a, int b) { return Scalar::fromInt(R, a - b); }));
        A.action.push_back(shift(false, [&](int, int b) { return Scalar::fromInt(R, b); }));
    } else {
        // F, K, Kinv, E
        A.action.push_back(shift(true, [&](int a, int) { return quantum_int(a, q); }));
        A.action.push_back(diag([&](int a, int b) { return Scalar::varPower(R, a - b); }));
        A.action.push_back(diag([&](int a, int b) { return Scalar::varPower(R, b - a); }));
        A.action.push_back(shift(false, [&](int, int b) { return quantum_int(b, q); }));
    }
    return A;
}

CoefficientAlgebra quantumLineModuleAlgebra(std::shared_ptr<HopfAlgebra> H, int p) {
    CoefficientAlgebra A;
    A.H = H;
    Ring R = H->ring();
    const auto& P = H->alg();
    int gIdx = -1, xIdx = -1;
    for (size_t g = 0; g < P.generators().size(); ++g) {
        if (P.generators()[g].degree == 0 && gIdx < 0) gIdx = static_cast<int>(g);
        if (P.generators()[g].degree >= 1 && xIdx < 0) xIdx = static_cast<int>(g);
    }
    if (gIdx < 0) throw Error("quantumLineModuleAlgebra: no grouplike generator");
    Scalar lambda = Scalar::zero(R);
    if (xIdx >= 0) {
        // read the braiding from the straightening rule x g -> lambda g x
        Word lhs;
        lhs.push_back(static_cast<char>(xIdx));
        lhs.push_back(static_cast<char>(gIdx));
        for (const auto& rule : P.rules())
            if (rule.lhs == lhs && rule.rhs.size() == 1) lambda = rule.rhs.begin()->second;
        if (lambda.isZero())
            throw Error("quantumLineModuleAlgebra: no straightening rule for x g");
    } else {
        // pure group algebra: g acts by -1 when its order is even, trivially otherwise
        int order = 0;
        for (const auto& rule : P.rules())
            if (rule.rhs.count(Word())) order = static_cast<int>(rule.lhs.size());
        lambda = Scalar::fromInt(R, order % 2 == 0 ? -1 : 1);
    }
    A.dim = p;
    for (int k = 0; k < p; ++k) A.labels.push_back("y^" + std::to_string(k));
    A.degrees.assign(p, 0);
    A.unit = basisVec(0, R);
    A.mult.assign(p, std::vector<std::optional<SparseVec>>(p));
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            SparseVec v;
            if (i + j < p) v[i + j] = Scalar::one(R);
            A.mult[i][j] = std::move(v);
        }
    A.action.assign(P.generators().size(), SparseMat::zero(R, p, p));
    for (int k = 0; k < p; ++k) {
        addAt(A.action[gIdx], k, k, lambda.pow(k));
        if (xIdx >= 0 && k > 0) {
            Scalar qk = Scalar::zero(R); // [k] = 1 + lambda + ... + lambda^{k-1}
            for (int i = 0; i < k; ++i) qk += lambda.pow(i);
            addAt(A.action[xIdx], k - 1, k, qk);
        }
    }
    return A;
}

CoefficientAlgebra regularComoduleAlgebra(std::shared_ptr<HopfAlgebra> H, int degreeCap,
                                          bool leftCoaction) {
    CoefficientAlgebra A;
    A.H = H;
    A.coactsLeft = leftCoaction;
    Ring R = H->ring();
    const auto& P = H->alg();
    BasisIndex basis(P.basisUpTo(degreeCap));
    A.dim = basis.size();
    for (const auto& w : basis.words) A.labels.push_back(P.wordStr(w));
    A.degrees.assign(A.dim, 0);
    A.unit = basisVec(basis.indexOf(Word()), R);
    A.mult.assign(A.dim, std::vector<std::optional<SparseVec>>(A.dim));
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            AlgebraElement pr = P.wordElement(basis.words[i]) * P.wordElement(basis.words[j]);
            SparseVec v;
            bool ok = true;
            for (const auto& [w, c] : pr.terms()) {
                if (basis.pos.find(w) == basis.pos.end()) {
                    ok = false;
                    break;
                }
                v[basis.pos.at(w)] = c;
            }
            if (ok) A.mult[i][j] = std::move(v);
        }
    for (int i = 0; i < A.dim; ++i) {
        CoactionTerms terms;
        TensorElement cop = H->coproductWord(basis.words[i]);
        for (const auto& [wt, c] : cop.terms()) {
            const Word& hLeg = leftCoaction ? wt[0] : wt[1];
            const Word& aLeg = leftCoaction ? wt[1] : wt[0];
            if (basis.pos.find(aLeg) == basis.pos.end())
                throw DegreeOverflowError("coaction leg escapes the realized basis");
            addScaled(terms, std::make_pair(hLeg, basis.pos.at(aLeg)), c);
        }
        A.coaction.push_back(std::move(terms));
    }
    return A;
}

CoefficientAlgebra grouplikeComoduleAlgebra(std::shared_ptr<HopfAlgebra> H, const Word& sigma,
                                            int p, bool leftCoaction) {
    CoefficientAlgebra A;
    A.H = H;
    A.coactsLeft = leftCoaction;
    Ring R = H->ring();
    const auto& P = H->alg();
    A.dim = p;
    for (int k = 0; k < p; ++k) A.labels.push_back("y^" + std::to_string(k));
    A.degrees.assign(p, 0);
    A.unit = basisVec(0, R);
    A.mult.assign(p, std::vector<std::optional<SparseVec>>(p));
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
            SparseVec v;
            if (i + j < p) v[i + j] = Scalar::one(R);
            A.mult[i][j] = std::move(v);
        }
    AlgebraElement power = P.unit();
    for (int k = 0; k < p; ++k) {
        CoactionTerms terms;
        for (const auto& [w, c] : power.terms()) addScaled(terms, std::make_pair(w, k), c);
        A.coaction.push_back(std::move(terms));
        power = power * P.wordElement(sigma);
    }
    return A;
}

// ---------------------------------------------------------------------------
// ChainBasis

int ChainBasis::indexOf(int m, const std::vector<int>& slots) const {
    auto it = pos.find({m, slots});
    return it == pos.end() ? -1 : it->second;
}

SparseVec ChainBasis::reduce(const SparseVec& ambient) const {
    switch (realization) {
        case Realization::Free:
            return ambient;
        case Realization::Quotient:
            return quot.reduce(ambient);
        case Realization::Subspace: {
            auto c = sub.coords(ambient);
            if (!c) throw MorphismFailureError("operator image leaves the realized subspace");
            return *c;
        }
    }
    return {};
}

SparseVec ChainBasis::lift(const Ring& ring, int i) const {
    switch (realization) {
        case Realization::Free:
            return basisVec(i, ring);
        case Realization::Quotient:
            return basisVec(quot.representative(i), ring);
        case Realization::Subspace:
            return sub.basisVector(i);
    }
    return {};
}

namespace {

ChainBasis makeTupleBasis(const Ring& R, int coeffDim, int nslots,
                          const std::vector<int>& slotDeg, int cap) {
    (void)R;
    ChainBasis b;
    int nslotBasis = static_cast<int>(slotDeg.size());
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int k, int used) {
        if (k == nslots) {
            for (int m = 0; m < coeffDim; ++m) {
                b.pos[{m, cur}] = static_cast<int>(b.tuples.size());
                b.tuples.push_back({m, cur});
            }
            return;
        }
        for (int s = 0; s < nslotBasis; ++s) {
            if (used + slotDeg[s] > cap) continue;
            cur.push_back(s);
            rec(k + 1, used + slotDeg[s]);
            cur.pop_back();
        }
    };
    // coefficient-minor layout: enumerate slot tuples, then coefficients
    std::function<void(int, int)> recOuter = rec;
    recOuter(0, 0);
    b.dim = static_cast<int>(b.tuples.size());
    return b;
}

SparseVec liftOf(const ChainBasis& b, int i, const Ring& R) {
    switch (b.realization) {
        case ChainBasis::Realization::Free:
            return basisVec(i, R);
        case ChainBasis::Realization::Quotient:
            return basisVec(b.quot.representative(i), R);
        case ChainBasis::Realization::Subspace:
            return b.sub.basisVector(i);
    }
    return {};
}

SparseMat realizeOp(const Ring& R, const ChainBasis& src, const ChainBasis& dst,
                    const SparseMat& ambient) {
    SparseMat out = SparseMat::zero(R, dst.dim, src.dim);
    for (int j = 0; j < src.dim; ++j) {
        SparseVec img = ambient.apply(liftOf(src, j, R));
        for (const auto& [r, c] : dst.reduce(img)) addAt(out, r, j, c);
    }
    return out;
}

// Pull-style operator: contributions (dPhi)(coeff, dstSlots) =
// sum_x Op_x[coeff][coeff'] Phi(coeff', x), assembled per distinct dst slots.
using PullAcc = std::map<std::vector<int>, SparseMat>;

struct PullHelper {
    Ring R;
    int coeffDim;
    PullAcc acc;

    SparseMat& at(const std::vector<int>& slots) {
        auto it = acc.find(slots);
        if (it == acc.end())
            it = acc.emplace(slots, SparseMat::zero(R, coeffDim, coeffDim)).first;
        return it->second;
    }
    void addScalar(const std::vector<int>& slots, const Scalar& c) {
        if (c.isZero()) return;
        SparseMat& m = at(slots);
        for (int v = 0; v < coeffDim; ++v) addAt(m, v, v, c);
    }
    void addMat(const std::vector<int>& slots, const SparseMat& op) {
        SparseMat& m = at(slots);
        for (int r = 0; r < op.rows; ++r)
            for (const auto& [c, val] : op.row[r]) addAt(m, r, c, val);
    }
    void addEntry(const std::vector<int>& slots, int rowCoeff, int colCoeff, const Scalar& c) {
        addAt(at(slots), rowCoeff, colCoeff, c);
    }
};

SparseMat pullAmbient(const Ring& R, const ChainBasis& dst, const ChainBasis& src,
                      int coeffDim,
                      const std::function<void(const std::vector<int>&, PullHelper&)>& fn) {
    SparseMat amb = SparseMat::zero(R, dst.ambientDim(), src.ambientDim());
    std::map<std::vector<int>, PullAcc> cache;
    for (int t = 0; t < dst.ambientDim(); ++t) {
        const auto& [cT, y] = dst.tuples[t];
        auto it = cache.find(y);
        if (it == cache.end()) {
            PullHelper h{R, coeffDim, {}};
            fn(y, h);
            it = cache.emplace(y, std::move(h.acc)).first;
        }
        for (const auto& [xSlots, op] : it->second) {
            for (const auto& [cS, val] : op.row[cT]) {
                auto pit = src.pos.find({cS, xSlots});
                if (pit == src.pos.end())
                    throw MorphismFailureError("pull operator references a missing tuple");
                addAt(amb, t, pit->second, val);
            }
        }
    }
    return amb;
}

SparseMat actionWordMatrix(const ContraModule& CM, const Word& w) {
    Ring R = CM.ring();
    SparseMat out = SparseMat::zero(R, CM.dim(), CM.dim());
    for (int j = 0; j < CM.dim(); ++j)
        for (const auto& [r, c] : CM.actWord(w, basisVec(j, R))) addAt(out, r, j, c);
    return out;
}

SparseMat actionElementMatrix(const ContraModule& CM, const AlgebraElement& h) {
    Ring R = CM.ring();
    SparseMat out = SparseMat::zero(R, CM.dim(), CM.dim());
    for (const auto& [w, c] : h.terms()) out = out + actionWordMatrix(CM, w).scaled(c);
    return out;
}

void assembleObject(BuiltComplex& out, const Ring& R, Direction dir,
                    const std::vector<ChainBasis>& bases,
                    const std::vector<std::vector<SparseMat>>& faces,
                    const std::vector<std::vector<SparseMat>>& degs,
                    const std::vector<SparseMat>& cyc) {
    int cap = static_cast<int>(bases.size()) - 1;
    out.object = ParaCyclicObject(R, dir);
    for (int n = 0; n <= cap; ++n) out.object.setDegree(n, bases[n].dim);
    for (int n = 1; n <= cap; ++n)
        for (int i = 0; i < static_cast<int>(faces[n].size()); ++i)
            out.object.setFace(n, i, faces[n][i]);
    for (int n = 0; n < cap; ++n)
        for (int j = 0; j < static_cast<int>(degs[n].size()); ++j)
            out.object.setDegeneracy(n, j, degs[n][j]);
    for (int n = 0; n <= cap; ++n) out.object.setCyclic(n, cyc[n]);
    out.bases = bases;
    out.dims.clear();
    for (const auto& b : bases) out.dims.push_back(b.dim);
}

std::vector<int> withInsert(const std::vector<int>& v, size_t pos, int val) {
    std::vector<int> out(v.begin(), v.begin() + pos);
    out.push_back(val);
    out.insert(out.end(), v.begin() + pos, v.end());
    return out;
}

std::vector<int> withErase(const std::vector<int>& v, size_t pos) {
    std::vector<int> out = v;
    out.erase(out.begin() + pos);
    return out;
}

std::vector<int> withSplice(const std::vector<int>& v, size_t pos, int a, int b) {
    std::vector<int> out(v.begin(), v.begin() + pos);
    out.push_back(a);
    out.push_back(b);
    out.insert(out.end(), v.begin() + pos + 1, v.end());
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Module-coalgebra family (coefficients (x)_H / (x)_K tensor powers of
// C = H / H K^+ and their functional partners)

namespace {

struct CoalgCtx {
    const ComplexSpec& spec;
    const HopfAlgebra& H;
    Ring R;
    QuotientCoalgebra C;
    std::vector<int> slotDeg;
    int oneCoset = -1;

    CoalgCtx(const ComplexSpec& s, const std::vector<int>& subGens)
        : spec(s),
          H(*s.H),
          R(s.H->ring()),
          C(s.H.get(), subGens, s.tensorCap + s.balancingCap) {
        for (int i = 0; i < C.dim(); ++i)
            slotDeg.push_back(H.alg().degreeOf(C.cosetWord(i)));
        SparseVec one = C.reduce(H.alg().unit());
        if (one.size() != 1) throw MorphismFailureError("coset of 1 is not a basis coset");
        oneCoset = one.begin()->first;
    }

    AlgebraElement wordElt(const Word& w) const { return H.alg().wordElement(w); }

    // Diagonal left action of an algebra element on a coset tuple.
    void diagAct(const AlgebraElement& h, const std::vector<int>& slots, const Scalar& c0,
                 const std::function<void(const std::vector<int>&, const Scalar&)>& sink) const {
        if (slots.empty()) {
            sink(slots, c0 * H.counit(h));
            return;
        }
        TensorElement it = H.coproductIter(h, static_cast<int>(slots.size()));
        for (const auto& [wt, c] : it.terms()) {
            std::vector<SparseVec> sv;
            for (size_t k = 0; k < slots.size(); ++k)
                sv.push_back(C.actLeft(wordElt(wt[k]), slots[k]));
            std::vector<int> cur;
            expandSlots(sv, 0, cur, c0 * c, sink);
        }
    }
};

// Words of H spanned by the given generator subset, up to the degree cap;
// the empty word is omitted.
std::vector<Word> balancingWords(const HopfAlgebra& H, const std::vector<int>& gens, int cap,
                                 bool restrict) {
    std::vector<Word> out;
    for (const Word& w : H.alg().basisUpTo(cap)) {
        if (w.empty()) continue;
        if (restrict) {
            bool ok = true;
            for (char ch : w)
                if (std::find(gens.begin(), gens.end(), static_cast<int>(ch)) == gens.end())
                    ok = false;
            if (!ok) continue;
        }
        out.push_back(w);
    }
    return out;
}

// Balancing relations (m k) (x) x - m (x) k x over the given spanning words;
// relations that escape the realized window are skipped.
void imposeBalancing(const CoalgCtx& ctx, const SaydModule& M, ChainBasis& b,
                     const std::vector<Word>& words, int* skipped) {
    std::vector<SparseVec> rels;
    for (const Word& h : words) {
        AlgebraElement hElt = ctx.wordElt(h);
        for (int t = 0; t < b.ambientDim(); ++t) {
            const auto& [j, slots] = b.tuples[t];
            if (j != 0 && M.dim() > 1) {
                // relations are generated from every coefficient basis vector
            }
            LabelVec lv;
            for (const auto& [jj, c] : M.actWord(h, basisVec(j, ctx.R)))
                addLabel(lv, jj, slots, c);
            bool ok = true;
            try {
                ctx.diagAct(hElt, slots, Scalar::one(ctx.R),
                            [&](const std::vector<int>& ns, const Scalar& c) {
                                addLabel(lv, j, ns, -c);
                            });
            } catch (const DegreeOverflowError&) {
                ok = false;
            }
            if (!ok) {
                ++*skipped;
                continue;
            }
            auto vec = toIndexed(b, lv);
            if (!vec) {
                ++*skipped;
                continue;
            }
            if (!vec->empty()) rels.push_back(std::move(*vec));
        }
    }
    b.realization = ChainBasis::Realization::Quotient;
    b.quot = QuotientSpace(ctx.R, b.ambientDim(), rels);
    b.dim = b.quot.dim();
}

BuiltComplex buildModuleCoalgebra(const ComplexSpec& s, bool relative) {
    const SaydModule& M = *s.M;
    CoalgCtx ctx(s, s.subGenerators);
    Ring R = ctx.R;
    int cap = s.degreeCap;
    BuiltComplex out;
    out.kind = s.kind;

    std::vector<Word> balWords =
        relative ? balancingWords(ctx.H, s.subGenerators, s.balancingCap, true)
                 : balancingWords(ctx.H, {}, s.balancingCap, false);

    int skipped = 0;
    std::vector<ChainBasis> bases(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        int nslots = relative ? n : n + 1;
        bases[n] = makeTupleBasis(R, M.dim(), nslots, ctx.slotDeg, s.tensorCap);
        imposeBalancing(ctx, M, bases[n], balWords, &skipped);
    }
    if (skipped)
        out.notes.push_back("skipped " + std::to_string(skipped) +
                            " balancing relations at the window boundary");

    auto column = [&](const ChainBasis& src, int t, const std::function<void(
                          int, const std::vector<int>&, LabelVec&)>& fn) {
        const auto& [j, slots] = src.tuples[t];
        LabelVec lv;
        fn(j, slots, lv);
        return lv;
    };
    auto ambientPush = [&](const ChainBasis& src, const ChainBasis& dst,
                           const std::function<void(int, const std::vector<int>&, LabelVec&)>&
                               fn) {
        SparseMat amb = SparseMat::zero(R, dst.ambientDim(), src.ambientDim());
        for (int t = 0; t < src.ambientDim(); ++t) {
            LabelVec lv = column(src, t, fn);
            auto vec = toIndexed(dst, lv);
            if (!vec) throw MorphismFailureError("operator image leaves the tuple window");
            for (const auto& [r, c] : *vec) addAt(amb, r, t, c);
        }
        return amb;
    };

    std::vector<std::vector<SparseMat>> faces(cap + 1), degs(cap + 1);
    std::vector<SparseMat> cyc(cap + 1);

    for (int n = 1; n <= cap; ++n) {
        for (int i = 0; i <= n; ++i) {
            auto fn = [&](int j, const std::vector<int>& slots, LabelVec& lv) {
                if (!relative) {
                    if (i < n) {
                        for (const auto& [pq, c] : ctx.C.coproductCoset(slots[i]))
                            addLabel(lv, j, withSplice(slots, i, pq.first, pq.second), c);
                    } else {
                        for (const auto& [key, cm] : M.coaction(j)) {
                            AlgebraElement w = ctx.wordElt(key.first);
                            for (const auto& [pq, c] : ctx.C.coproductCoset(slots[0])) {
                                SparseVec last = ctx.C.actLeft(w, pq.first);
                                for (const auto& [li, lc] : last) {
                                    std::vector<int> ns;
                                    ns.push_back(pq.second);
                                    ns.insert(ns.end(), slots.begin() + 1, slots.end());
                                    ns.push_back(li);
                                    addLabel(lv, key.second, ns, cm * c * lc);
                                }
                            }
                        }
                    }
                } else {
                    if (i == 0) {
                        addLabel(lv, j, withInsert(slots, 0, ctx.oneCoset), Scalar::one(R));
                    } else if (i < n) {
                        for (const auto& [pq, c] : ctx.C.coproductCoset(slots[i - 1]))
                            addLabel(lv, j, withSplice(slots, i - 1, pq.first, pq.second), c);
                    } else {
                        for (const auto& [key, cm] : M.coaction(j)) {
                            SparseVec bar = ctx.C.reduce(ctx.wordElt(key.first));
                            for (const auto& [li, lc] : bar) {
                                std::vector<int> ns = slots;
                                ns.push_back(li);
                                addLabel(lv, key.second, ns, cm * lc);
                            }
                        }
                    }
                }
            };
            faces[n].push_back(realizeOp(R, bases[n - 1], bases[n],
                                         ambientPush(bases[n - 1], bases[n], fn)));
        }
    }
    for (int n = 0; n < cap; ++n) {
        for (int j = 0; j <= n; ++j) {
            auto fn = [&](int m, const std::vector<int>& slots, LabelVec& lv) {
                size_t dropPos = relative ? static_cast<size_t>(j) : static_cast<size_t>(j + 1);
                Scalar c = ctx.C.counitCoset(slots[dropPos]);
                addLabel(lv, m, withErase(slots, dropPos), c);
            };
            degs[n].push_back(realizeOp(R, bases[n + 1], bases[n],
                                        ambientPush(bases[n + 1], bases[n], fn)));
        }
    }
    for (int n = 0; n <= cap; ++n) {
        if (relative && n == 0) {
            cyc[0] = SparseMat::identity(R, bases[0].dim);
            continue;
        }
        auto fn = [&](int j, const std::vector<int>& slots, LabelVec& lv) {
            if (!relative) {
                for (const auto& [key, cm] : M.coaction(j)) {
                    SparseVec last = ctx.C.actLeft(ctx.wordElt(key.first), slots[0]);
                    for (const auto& [li, lc] : last) {
                        std::vector<int> ns(slots.begin() + 1, slots.end());
                        ns.push_back(li);
                        addLabel(lv, key.second, ns, cm * lc);
                    }
                }
            } else {
                const Word& h1 = ctx.C.cosetWord(slots[0]);
                TensorElement cop = ctx.H.coproductWord(h1);
                for (const auto& [wt, c] : cop.terms()) {
                    AlgebraElement Sh2 = ctx.H.antipodeWord(wt[1]);
                    for (const auto& [key, cm] : M.coaction(j)) {
                        SparseVec mv = M.actWord(wt[0], basisVec(key.second, R));
                        SparseVec bar = ctx.C.reduce(ctx.wordElt(key.first));
                        for (const auto& [bi, bc] : bar) {
                            std::vector<int> base(slots.begin() + 1, slots.end());
                            base.push_back(bi);
                            ctx.diagAct(Sh2, base, c * cm * bc,
                                        [&](const std::vector<int>& ns, const Scalar& cc) {
                                            for (const auto& [jj, jc] : mv)
                                                addLabel(lv, jj, ns, cc * jc);
                                        });
                        }
                    }
                }
            }
        };
        cyc[n] = realizeOp(R, bases[n], bases[n], ambientPush(bases[n], bases[n], fn));
    }

    assembleObject(out, R, Direction::Cocyclic, bases, faces, degs, cyc);
    return out;
}

// Functional partner: Hom_H(C^{(x) n+1}, M-dual) (absolute, cyclic) or
// Hom_K(C^{(x) n}, M-dual) (relative, cyclic).
BuiltComplex buildModuleCoalgebraContra(const ComplexSpec& s, const ContraModule& CM,
                                        bool relative) {
    CoalgCtx ctx(s, s.subGenerators);
    Ring R = ctx.R;
    int cap = s.degreeCap;
    int vd = CM.dim();
    BuiltComplex out;
    out.kind = s.kind;

    const auto& P = ctx.H.alg();
    std::vector<int> eqGens;
    if (relative) {
        eqGens = s.subGenerators;
    } else {
        for (size_t g = 0; g < P.generators().size(); ++g) eqGens.push_back(static_cast<int>(g));
    }

    int skipped = 0;
    std::vector<ChainBasis> bases(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        int nslots = relative ? n : n + 1;
        bases[n] = makeTupleBasis(R, vd, nslots, ctx.slotDeg, s.tensorCap);
        // equivariance: psi(k . x) = k . psi(x) for the spanning generators;
        // conditions reaching past the window boundary cannot be imposed and
        // are skipped, matching the skipped balancing relations of the
        // partner realization
        std::vector<SparseVec> rows;
        for (int g : eqGens) {
            AlgebraElement gElt = P.gen(g);
            const SparseMat& G = CM.actionMatrix(g);
            Scalar eps = ctx.H.counit(gElt);
            for (int t = 0; t < bases[n].ambientDim(); ++t) {
                const auto& [v, slots] = bases[n].tuples[t];
                SparseVec row;
                bool inWindow = true;
                if (slots.empty()) {
                    sparseAxpy(row, eps, basisVec(t, R));
                } else {
                    try {
                        ctx.diagAct(gElt, slots, Scalar::one(R),
                                    [&](const std::vector<int>& ns, const Scalar& c) {
                                        int id = bases[n].indexOf(v, ns);
                                        if (id < 0)
                                            throw DegreeOverflowError("row leaves the window");
                                        sparseAxpy(row, c, basisVec(id, R));
                                    });
                    } catch (const DegreeOverflowError&) {
                        inWindow = false;
                    }
                }
                if (!inWindow) {
                    ++skipped;
                    continue;
                }
                for (const auto& [vp, gc] : G.row[v]) {
                    int id = bases[n].indexOf(vp, slots);
                    sparseAxpy(row, -gc, basisVec(id, R));
                }
                if (!row.empty()) rows.push_back(std::move(row));
            }
        }
        auto ker = kernelBasis(
            matFromRows(R, static_cast<int>(rows.size()), bases[n].ambientDim(), rows));
        bases[n].realization = ChainBasis::Realization::Subspace;
        bases[n].sub = SubSpace(R, bases[n].ambientDim(), ker);
        bases[n].dim = bases[n].sub.dim();
    }
    if (skipped)
        out.notes.push_back("skipped " + std::to_string(skipped) +
                            " equivariance rows at the window boundary");

    std::vector<std::vector<SparseMat>> faces(cap + 1), degs(cap + 1);
    std::vector<SparseMat> cyc(cap + 1);
    const auto& alphaSupp = CM.alphaSupport();

    for (int n = 1; n <= cap; ++n) {
        for (int i = 0; i <= n; ++i) {
            auto fn = [&](const std::vector<int>& y, PullHelper& h) {
                if (!relative) {
                    if (i < n) {
                        for (const auto& [pq, c] : ctx.C.coproductCoset(y[i]))
                            h.addScalar(withSplice(y, i, pq.first, pq.second), c);
                    } else {
                        for (const auto& [w, Aw] : alphaSupp) {
                            AlgebraElement wElt = ctx.wordElt(w);
                            for (const auto& [pq, c] : ctx.C.coproductCoset(y[0])) {
                                SparseVec last = ctx.C.actLeft(wElt, pq.first);
                                for (const auto& [li, lc] : last) {
                                    std::vector<int> ns;
                                    ns.push_back(pq.second);
                                    ns.insert(ns.end(), y.begin() + 1, y.end());
                                    ns.push_back(li);
                                    h.addMat(ns, Aw.scaled(c * lc));
                                }
                            }
                        }
                    }
                } else {
                    if (i == 0) {
                        h.addScalar(withInsert(y, 0, ctx.oneCoset), Scalar::one(R));
                    } else if (i < n) {
                        for (const auto& [pq, c] : ctx.C.coproductCoset(y[i - 1]))
                            h.addScalar(withSplice(y, i - 1, pq.first, pq.second), c);
                    } else {
                        for (const auto& [w, Aw] : alphaSupp) {
                            SparseVec bar = ctx.C.reduce(ctx.wordElt(w));
                            for (const auto& [li, lc] : bar) {
                                std::vector<int> ns = y;
                                ns.push_back(li);
                                h.addMat(ns, Aw.scaled(lc));
                            }
                        }
                    }
                }
            };
            // cyclic face d_i : X_n -> X_{n-1}
            try {
                faces[n].push_back(realizeOp(
                    R, bases[n], bases[n - 1], pullAmbient(R, bases[n - 1], bases[n], vd, fn)));
            } catch (const MorphismFailureError& e) {
                throw MorphismFailureError("face " + std::to_string(i) + " at degree " +
                                           std::to_string(n) + ": " + e.what());
            }
        }
    }
    for (int n = 0; n < cap; ++n) {
        for (int j = 0; j <= n; ++j) {
            auto fn = [&](const std::vector<int>& y, PullHelper& h) {
                size_t dropPos = relative ? static_cast<size_t>(j) : static_cast<size_t>(j + 1);
                h.addScalar(withErase(y, dropPos), ctx.C.counitCoset(y[dropPos]));
            };
            // cyclic degeneracy s_j : X_n -> X_{n+1}
            try {
                degs[n].push_back(realizeOp(
                    R, bases[n], bases[n + 1], pullAmbient(R, bases[n + 1], bases[n], vd, fn)));
            } catch (const MorphismFailureError& e) {
                throw MorphismFailureError("degeneracy " + std::to_string(j) + " at degree " +
                                           std::to_string(n) + ": " + e.what());
            }
        }
    }
    for (int n = 0; n <= cap; ++n) {
        if (relative && n == 0) {
            cyc[0] = SparseMat::identity(R, bases[0].dim);
            continue;
        }
        auto fn = [&](const std::vector<int>& y, PullHelper& h) {
            if (!relative) {
                for (const auto& [w, Aw] : alphaSupp) {
                    SparseVec last = ctx.C.actLeft(ctx.wordElt(w), y[0]);
                    for (const auto& [li, lc] : last) {
                        std::vector<int> ns(y.begin() + 1, y.end());
                        ns.push_back(li);
                        h.addMat(ns, Aw.scaled(lc));
                    }
                }
            } else {
                const Word& h1 = ctx.C.cosetWord(y[0]);
                TensorElement it3 = ctx.H.coproductIter(ctx.wordElt(h1), 3);
                for (const auto& [wt, c] : it3.terms()) {
                    AlgebraElement Sih1 = ctx.H.antipodeInvWord(wt[0]);
                    SparseMat outer = actionWordMatrix(CM, wt[1]);
                    AlgebraElement Sh3 = ctx.H.antipodeWord(wt[2]);
                    for (const auto& [w, Aw] : alphaSupp) {
                        SparseVec bar = ctx.C.reduce(ctx.wordElt(w) * Sih1);
                        SparseMat op = outer * Aw;
                        std::vector<int> rest(y.begin() + 1, y.end());
                        ctx.diagAct(Sh3, rest, c,
                                    [&](const std::vector<int>& ns, const Scalar& cc) {
                                        for (const auto& [bi, bc] : bar) {
                                            std::vector<int> full = ns;
                                            full.push_back(bi);
                                            h.addMat(full, op.scaled(cc * bc));
                                        }
                                    });
                    }
                }
            }
        };
        try {
            cyc[n] = realizeOp(R, bases[n], bases[n], pullAmbient(R, bases[n], bases[n], vd, fn));
        } catch (const MorphismFailureError& e) {
            throw MorphismFailureError("cyclic operator at degree " + std::to_string(n) + ": " +
                                       e.what());
        }
    }

    assembleObject(out, R, Direction::Cyclic, bases, faces, degs, cyc);
    return out;
}

// ---------------------------------------------------------------------------
// Module-algebra family

struct AlgCtx {
    const ComplexSpec& spec;
    const HopfAlgebra& H;
    Ring R;
    const CoefficientAlgebra& A;

    AlgCtx(const ComplexSpec& s) : spec(s), H(*s.H), R(s.H->ring()), A(*s.A) {}

    // Diagonal left action on algebra slots.
    void diagAct(const AlgebraElement& h, const std::vector<int>& slots, const Scalar& c0,
                 const std::function<void(const std::vector<int>&, const Scalar&)>& sink) const {
        if (slots.empty()) {
            sink(slots, c0 * H.counit(h));
            return;
        }
        TensorElement it = H.coproductIter(h, static_cast<int>(slots.size()));
        for (const auto& [wt, c] : it.terms()) {
            std::vector<SparseVec> sv;
            for (size_t k = 0; k < slots.size(); ++k)
                sv.push_back(A.actWord(wt[k], basisVec(slots[k], R)));
            std::vector<int> cur;
            expandSlots(sv, 0, cur, c0 * c, sink);
        }
    }
};

// Invariant functionals on coefficients (x) A^{(x) n+1} (cocyclic).
BuiltComplex buildModuleAlgebraCocyclic(const ComplexSpec& s) {
    const SaydModule& M = *s.M;
    AlgCtx ctx(s);
    Ring R = ctx.R;
    int cap = s.degreeCap;
    int md = M.dim();
    BuiltComplex out;
    out.kind = s.kind;
    const auto& P = ctx.H.alg();

    std::vector<ChainBasis> bases(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        bases[n] = makeTupleBasis(R, md, n + 1, ctx.A.degrees, s.tensorCap);
        std::vector<SparseVec> rows;
        for (size_t g = 0; g < P.generators().size(); ++g) {
            Word gw(1, static_cast<char>(g));
            TensorElement cop = ctx.H.coproductWord(gw);
            Scalar eps = ctx.H.counitWord(gw);
            for (int t = 0; t < bases[n].ambientDim(); ++t) {
                const auto& [j, slots] = bases[n].tuples[t];
                SparseVec row;
                for (const auto& [wt, c] : cop.terms()) {
                    SparseVec mv = M.actWord(wt[0], basisVec(j, R));
                    AlgebraElement S = ctx.H.antipodeWord(wt[1]);
                    ctx.diagAct(S, slots, c, [&](const std::vector<int>& ns, const Scalar& cc) {
                        for (const auto& [jj, jc] : mv) {
                            int id = bases[n].indexOf(jj, ns);
                            if (id < 0)
                                throw MorphismFailureError("invariance row leaves the window");
                            sparseAxpy(row, cc * jc, basisVec(id, R));
                        }
                    });
                }
                sparseAxpy(row, -eps, basisVec(t, R));
                if (!row.empty()) rows.push_back(std::move(row));
            }
        }
        auto ker = kernelBasis(
            matFromRows(R, static_cast<int>(rows.size()), bases[n].ambientDim(), rows));
        bases[n].realization = ChainBasis::Realization::Subspace;
        bases[n].sub = SubSpace(R, bases[n].ambientDim(), ker);
        bases[n].dim = bases[n].sub.dim();
    }

    std::vector<std::vector<SparseMat>> faces(cap + 1), degs(cap + 1);
    std::vector<SparseMat> cyc(cap + 1);

    for (int n = 1; n <= cap; ++n) {
        for (int i = 0; i <= n; ++i) {
            auto fn = [&](const std::vector<int>& y, PullHelper& h) {
                if (i < n) {
                    SparseVec prod =
                        ctx.A.multiply(basisVec(y[i], R), basisVec(y[i + 1], R));
                    for (const auto& [pi, pc] : prod) {
                        std::vector<int> ns = withErase(y, i + 1);
                        ns[i] = pi;
                        h.addScalar(ns, pc);
                    }
                } else {
                    for (int jT = 0; jT < md; ++jT) {
                        for (const auto& [key, cm] : M.coaction(jT)) {
                            AlgebraElement Si = ctx.H.antipodeInv(ctx.H.alg().wordElement(key.first));
                            SparseVec t = ctx.A.act(Si, basisVec(y[n], R));
                            SparseVec prod = ctx.A.multiply(t, basisVec(y[0], R));
                            for (const auto& [pi, pc] : prod) {
                                std::vector<int> ns;
                                ns.push_back(pi);
                                ns.insert(ns.end(), y.begin() + 1, y.end() - 1);
                                h.addEntry(ns, jT, key.second, cm * pc);
                            }
                        }
                    }
                }
            };
            faces[n].push_back(realizeOp(R, bases[n - 1], bases[n],
                                         pullAmbient(R, bases[n], bases[n - 1], md, fn)));
        }
    }
    for (int n = 0; n < cap; ++n) {
        for (int j = 0; j <= n; ++j) {
            auto fn = [&](const std::vector<int>& y, PullHelper& h) {
                for (const auto& [ui, uc] : ctx.A.unit)
                    h.addScalar(withInsert(y, j + 1, ui), uc);
            };
            // cocyclic degeneracy sigma_j : X^{n+1} -> X^n
            degs[n].push_back(realizeOp(R, bases[n + 1], bases[n],
                                        pullAmbient(R, bases[n], bases[n + 1], md, fn)));
        }
    }
    for (int n = 0; n <= cap; ++n) {
        auto fn = [&](const std::vector<int>& y, PullHelper& h) {
            for (int jT = 0; jT < md; ++jT) {
                for (const auto& [key, cm] : M.coaction(jT)) {
                    AlgebraElement Si = ctx.H.antipodeInv(ctx.H.alg().wordElement(key.first));
                    SparseVec t = ctx.A.act(Si, basisVec(y[n], R));
                    for (const auto& [pi, pc] : t) {
                        std::vector<int> ns;
                        ns.push_back(pi);
                        ns.insert(ns.end(), y.begin(), y.end() - 1);
                        h.addEntry(ns, jT, key.second, cm * pc);
                    }
                }
            }
        };
        cyc[n] = realizeOp(R, bases[n], bases[n], pullAmbient(R, bases[n], bases[n], md, fn));
    }

    assembleObject(out, R, Direction::Cocyclic, bases, faces, degs, cyc);
    return out;
}

// Equivariant maps A^{(x) n+1} -> M-dual with the contra-action (cocyclic).
BuiltComplex buildModuleAlgebraContra(const ComplexSpec& s, const ContraModule& CM) {
    AlgCtx ctx(s);
    Ring R = ctx.R;
    int cap = s.degreeCap;
    int vd = CM.dim();
    BuiltComplex out;
    out.kind = s.kind;
    const auto& P = ctx.H.alg();

    std::vector<ChainBasis> bases(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        bases[n] = makeTupleBasis(R, vd, n + 1, ctx.A.degrees, s.tensorCap);
        std::vector<SparseVec> rows;
        for (size_t g = 0; g < P.generators().size(); ++g) {
            AlgebraElement gElt = P.gen(static_cast<int>(g));
            const SparseMat& G = CM.actionMatrix(static_cast<int>(g));
            for (int t = 0; t < bases[n].ambientDim(); ++t) {
                const auto& [v, slots] = bases[n].tuples[t];
                SparseVec row;
                ctx.diagAct(gElt, slots, Scalar::one(R),
                            [&](const std::vector<int>& ns, const Scalar& c) {
                                int id = bases[n].indexOf(v, ns);
                                if (id < 0)
                                    throw MorphismFailureError(
                                        "equivariance row leaves the window");
                                sparseAxpy(row, c, basisVec(id, R));
                            });
                for (const auto& [vp, gc] : G.row[v])
                    sparseAxpy(row, -gc, basisVec(bases[n].indexOf(vp, slots), R));
                if (!row.empty()) rows.push_back(std::move(row));
            }
        }
        auto ker = kernelBasis(
            matFromRows(R, static_cast<int>(rows.size()), bases[n].ambientDim(), rows));
        bases[n].realization = ChainBasis::Realization::Subspace;
        bases[n].sub = SubSpace(R, bases[n].ambientDim(), ker);
        bases[n].dim = bases[n].sub.dim();
    }

    std::vector<std::vector<SparseMat>> faces(cap + 1), degs(cap + 1);
    std::vector<SparseMat> cyc(cap + 1);
    const auto& alphaSupp = CM.alphaSupport();

    for (int n = 1; n <= cap; ++n) {
        for (int i = 0; i <= n; ++i) {
            auto fn = [&](const std::vector<int>& y, PullHelper& h) {
                if (i < n) {
                    SparseVec prod =
                        ctx.A.multiply(basisVec(y[i], R), basisVec(y[i + 1], R));
                    for (const auto& [pi, pc] : prod) {
                        std::vector<int> ns = withErase(y, i + 1);
                        ns[i] = pi;
                        h.addScalar(ns, pc);
                    }
                } else {
                    for (const auto& [w, Aw] : alphaSupp) {
                        AlgebraElement Si = ctx.H.antipodeInvWord(w);
                        SparseVec t = ctx.A.act(Si, basisVec(y[n], R));
                        SparseVec prod = ctx.A.multiply(t, basisVec(y[0], R));
                        for (const auto& [pi, pc] : prod) {
                            std::vector<int> ns;
                            ns.push_back(pi);
                            ns.insert(ns.end(), y.begin() + 1, y.end() - 1);
                            h.addMat(ns, Aw.scaled(pc));
                        }
                    }
                }
            };
            faces[n].push_back(realizeOp(R, bases[n - 1], bases[n],
                                         pullAmbient(R, bases[n], bases[n - 1], vd, fn)));
        }
    }
    for (int n = 0; n < cap; ++n) {
        for (int j = 0; j <= n; ++j) {
            auto fn = [&](const std::vector<int>& y, PullHelper& h) {
                for (const auto& [ui, uc] : ctx.A.unit)
                    h.addScalar(withInsert(y, j + 1, ui), uc);
            };
            degs[n].push_back(realizeOp(R, bases[n + 1], bases[n],
                                        pullAmbient(R, bases[n], bases[n + 1], vd, fn)));
        }
    }
    for (int n = 0; n <= cap; ++n) {
        auto fn = [&](const std::vector<int>& y, PullHelper& h) {
            for (const auto& [w, Aw] : alphaSupp) {
                AlgebraElement Si = ctx.H.antipodeInvWord(w);
                SparseVec t = ctx.A.act(Si, basisVec(y[n], R));
                for (const auto& [pi, pc] : t) {
                    std::vector<int> ns;
                    ns.push_back(pi);
                    ns.insert(ns.end(), y.begin(), y.end() - 1);
                    h.addMat(ns, Aw.scaled(pc));
                }
            }
        };
        cyc[n] = realizeOp(R, bases[n], bases[n], pullAmbient(R, bases[n], bases[n], vd, fn));
    }

    assembleObject(out, R, Direction::Cocyclic, bases, faces, degs, cyc);
    return out;
}

} // namespace

BuiltComplex moduleAlgebraCyclicPartner(const ComplexSpec& s) {
    const SaydModule& M = *s.M;
    AlgCtx ctx(s);
    Ring R = ctx.R;
    int cap = s.degreeCap;
    BuiltComplex out;
    out.kind = s.kind;

    std::vector<Word> balWords = balancingWords(ctx.H, {}, s.balancingCap, false);
    std::vector<ChainBasis> bases(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        bases[n] = makeTupleBasis(R, M.dim(), n + 1, ctx.A.degrees, s.tensorCap);
        std::vector<SparseVec> rels;
        for (const Word& h : balWords) {
            AlgebraElement hElt = ctx.H.alg().wordElement(h);
            for (int t = 0; t < bases[n].ambientDim(); ++t) {
                const auto& [j, slots] = bases[n].tuples[t];
                LabelVec lv;
                for (const auto& [jj, c] : M.actWord(h, basisVec(j, R)))
                    addLabel(lv, jj, slots, c);
                ctx.diagAct(hElt, slots, Scalar::one(R),
                            [&](const std::vector<int>& ns, const Scalar& c) {
                                addLabel(lv, j, ns, -c);
                            });
                auto vec = toIndexed(bases[n], lv);
                if (!vec) throw MorphismFailureError("balancing relation leaves the window");
                if (!vec->empty()) rels.push_back(std::move(*vec));
            }
        }
        bases[n].realization = ChainBasis::Realization::Quotient;
        bases[n].quot = QuotientSpace(R, bases[n].ambientDim(), rels);
        bases[n].dim = bases[n].quot.dim();
    }

    auto ambientPush = [&](const ChainBasis& src, const ChainBasis& dst,
                           const std::function<void(int, const std::vector<int>&, LabelVec&)>&
                               fn) {
        SparseMat amb = SparseMat::zero(R, dst.ambientDim(), src.ambientDim());
        for (int t = 0; t < src.ambientDim(); ++t) {
            const auto& [j, slots] = src.tuples[t];
            LabelVec lv;
            fn(j, slots, lv);
            auto vec = toIndexed(dst, lv);
            if (!vec) throw MorphismFailureError("operator image leaves the tuple window");
            for (const auto& [r, c] : *vec) addAt(amb, r, t, c);
        }
        return amb;
    };

    std::vector<std::vector<SparseMat>> faces(cap + 1), degs(cap + 1);
    std::vector<SparseMat> cyc(cap + 1);
    for (int n = 1; n <= cap; ++n) {
        for (int i = 0; i <= n; ++i) {
            auto fn = [&](int j, const std::vector<int>& slots, LabelVec& lv) {
                if (i < n) {
                    SparseVec prod =
                        ctx.A.multiply(basisVec(slots[i], R), basisVec(slots[i + 1], R));
                    for (const auto& [pi, pc] : prod) {
                        std::vector<int> ns = withErase(slots, i + 1);
                        ns[i] = pi;
                        addLabel(lv, j, ns, pc);
                    }
                } else {
                    for (const auto& [key, cm] : M.coaction(j)) {
                        AlgebraElement Si = ctx.H.antipodeInvWord(key.first);
                        SparseVec t = ctx.A.act(Si, basisVec(slots[n], R));
                        SparseVec prod = ctx.A.multiply(t, basisVec(slots[0], R));
                        for (const auto& [pi, pc] : prod) {
                            std::vector<int> ns;
                            ns.push_back(pi);
                            ns.insert(ns.end(), slots.begin() + 1, slots.end() - 1);
                            addLabel(lv, key.second, ns, cm * pc);
                        }
                    }
                }
            };
            faces[n].push_back(realizeOp(R, bases[n], bases[n - 1],
                                         ambientPush(bases[n], bases[n - 1], fn)));
        }
    }
    for (int n = 0; n < cap; ++n) {
        for (int j = 0; j <= n; ++j) {
            auto fn = [&](int m, const std::vector<int>& slots, LabelVec& lv) {
                for (const auto& [ui, uc] : ctx.A.unit)
                    addLabel(lv, m, withInsert(slots, j + 1, ui), uc);
            };
            degs[n].push_back(realizeOp(R, bases[n], bases[n + 1],
                                        ambientPush(bases[n], bases[n + 1], fn)));
        }
    }
    for (int n = 0; n <= cap; ++n) {
        auto fn = [&](int j, const std::vector<int>& slots, LabelVec& lv) {
            for (const auto& [key, cm] : M.coaction(j)) {
                AlgebraElement Si = ctx.H.antipodeInvWord(key.first);
                SparseVec t = ctx.A.act(Si, basisVec(slots[n], R));
                for (const auto& [pi, pc] : t) {
                    std::vector<int> ns;
                    ns.push_back(pi);
                    ns.insert(ns.end(), slots.begin(), slots.end() - 1);
                    addLabel(lv, key.second, ns, cm * pc);
                }
            }
        };
        cyc[n] = realizeOp(R, bases[n], bases[n], ambientPush(bases[n], bases[n], fn));
    }

    assembleObject(out, R, Direction::Cyclic, bases, faces, degs, cyc);
    return out;
}

// ---------------------------------------------------------------------------
// Comodule-algebra family (cotensor realizations and their duals)

namespace {

struct ComodData {
    std::vector<ChainBasis> bases;
    std::vector<std::vector<SparseMat>> ambFaces; // [n][i]: amb_n -> amb_{n-1}
    std::vector<std::vector<SparseMat>> ambDegs;  // [n][j]: amb_n -> amb_{n+1}
    std::vector<SparseMat> ambCyc;
};

ComodData buildComoduleData(const ComplexSpec& s) {
    const SaydModule& M = *s.M;
    const CoefficientAlgebra& A = *s.A;
    const HopfAlgebra& H = *s.H;
    Ring R = H.ring();
    int cap = s.degreeCap;
    ComodData d;
    d.bases.resize(cap + 1);

    for (int n = 0; n <= cap; ++n) {
        ChainBasis& b = d.bases[n];
        b = makeTupleBasis(R, M.dim(), n + 1, A.degrees, s.tensorCap);
        // cotensor condition: coefficient coaction matches the diagonal
        // H-legs of the slots
        using Key = std::tuple<Word, int, std::vector<int>>;
        std::map<Key, int> rowOf;
        std::vector<SparseVec> cols(b.ambientDim());
        auto rowIdx = [&](const Key& k) {
            auto it = rowOf.find(k);
            if (it == rowOf.end()) it = rowOf.emplace(k, static_cast<int>(rowOf.size())).first;
            return it->second;
        };
        for (int t = 0; t < b.ambientDim(); ++t) {
            const auto& [j, slots] = b.tuples[t];
            // expand the slotwise coaction
            std::function<void(size_t, AlgebraElement, std::vector<int>&, Scalar)> rec =
                [&](size_t k, AlgebraElement wordPart, std::vector<int>& zero, Scalar c) {
                    if (c.isZero()) return;
                    if (k == slots.size()) {
                        for (const auto& [w, cw] : wordPart.terms())
                            addScaled(cols[t], rowIdx({w, j, zero}), c * cw);
                        return;
                    }
                    for (const auto& [key, cc] : A.coaction[slots[k]]) {
                        zero.push_back(key.second);
                        rec(k + 1, wordPart * H.alg().wordElement(key.first), zero, c * cc);
                        zero.pop_back();
                    }
                };
            std::vector<int> zero;
            rec(0, H.alg().unit(), zero, Scalar::one(R));
            for (const auto& [key, cm] : M.coaction(j))
                addScaled(cols[t], rowIdx({key.first, key.second, slots}), -cm);
            for (auto it = cols[t].begin(); it != cols[t].end();)
                it = it->second.isZero() ? cols[t].erase(it) : std::next(it);
        }
        SparseMat cond = SparseMat::zero(R, static_cast<int>(rowOf.size()), b.ambientDim());
        for (int t = 0; t < b.ambientDim(); ++t)
            for (const auto& [r, c] : cols[t]) addAt(cond, r, t, c);
        auto ker = kernelBasis(cond);
        b.realization = ChainBasis::Realization::Subspace;
        b.sub = SubSpace(R, b.ambientDim(), ker);
        b.dim = b.sub.dim();
    }

    auto push = [&](const ChainBasis& src, const ChainBasis& dst,
                    const std::function<void(int, const std::vector<int>&, LabelVec&)>& fn) {
        SparseMat amb = SparseMat::zero(R, dst.ambientDim(), src.ambientDim());
        for (int t = 0; t < src.ambientDim(); ++t) {
            const auto& [j, slots] = src.tuples[t];
            LabelVec lv;
            fn(j, slots, lv);
            auto vec = toIndexed(dst, lv);
            if (!vec) throw MorphismFailureError("operator image leaves the tuple window");
            for (const auto& [r, c] : *vec) addAt(amb, r, t, c);
        }
        return amb;
    };

    d.ambFaces.resize(cap + 1);
    d.ambDegs.resize(cap + 1);
    d.ambCyc.resize(cap + 1);
    for (int n = 1; n <= cap; ++n)
        for (int i = 0; i <= n; ++i) {
            auto fn = [&](int j, const std::vector<int>& slots, LabelVec& lv) {
                if (i < n) {
                    SparseVec prod =
                        A.multiply(basisVec(slots[i], R), basisVec(slots[i + 1], R));
                    for (const auto& [pi, pc] : prod) {
                        std::vector<int> ns = withErase(slots, i + 1);
                        ns[i] = pi;
                        addLabel(lv, j, ns, pc);
                    }
                } else {
                    for (const auto& [key, cc] : A.coaction[slots[n]]) {
                        SparseVec mv = M.actWord(key.first, basisVec(j, R));
                        SparseVec prod =
                            A.multiply(basisVec(key.second, R), basisVec(slots[0], R));
                        for (const auto& [pi, pc] : prod) {
                            std::vector<int> ns;
                            ns.push_back(pi);
                            ns.insert(ns.end(), slots.begin() + 1, slots.end() - 1);
                            for (const auto& [jj, jc] : mv) addLabel(lv, jj, ns, cc * pc * jc);
                        }
                    }
                }
            };
            d.ambFaces[n].push_back(push(d.bases[n], d.bases[n - 1], fn));
        }
    for (int n = 0; n < cap; ++n)
        for (int j = 0; j <= n; ++j) {
            auto fn = [&](int m, const std::vector<int>& slots, LabelVec& lv) {
                for (const auto& [ui, uc] : A.unit)
                    addLabel(lv, m, withInsert(slots, j + 1, ui), uc);
            };
            d.ambDegs[n].push_back(push(d.bases[n], d.bases[n + 1], fn));
        }
    for (int n = 0; n <= cap; ++n) {
        auto fn = [&](int j, const std::vector<int>& slots, LabelVec& lv) {
            for (const auto& [key, cc] : A.coaction[slots[n]]) {
                SparseVec mv = M.actWord(key.first, basisVec(j, R));
                std::vector<int> ns;
                ns.push_back(key.second);
                ns.insert(ns.end(), slots.begin(), slots.end() - 1);
                for (const auto& [jj, jc] : mv) addLabel(lv, jj, ns, cc * jc);
            }
        };
        d.ambCyc[n] = push(d.bases[n], d.bases[n], fn);
    }
    return d;
}

BuiltComplex buildComoduleCyclic(const ComplexSpec& s) {
    Ring R = s.H->ring();
    ComodData d = buildComoduleData(s);
    int cap = s.degreeCap;
    BuiltComplex out;
    out.kind = s.kind;
    std::vector<std::vector<SparseMat>> faces(cap + 1), degs(cap + 1);
    std::vector<SparseMat> cyc(cap + 1);
    for (int n = 1; n <= cap; ++n)
        for (int i = 0; i <= n; ++i)
            faces[n].push_back(realizeOp(R, d.bases[n], d.bases[n - 1], d.ambFaces[n][i]));
    for (int n = 0; n < cap; ++n)
        for (int j = 0; j <= n; ++j)
            degs[n].push_back(realizeOp(R, d.bases[n], d.bases[n + 1], d.ambDegs[n][j]));
    for (int n = 0; n <= cap; ++n)
        cyc[n] = realizeOp(R, d.bases[n], d.bases[n], d.ambCyc[n]);
    assembleObject(out, R, Direction::Cyclic, d.bases, faces, degs, cyc);
    return out;
}

BuiltComplex buildComoduleContra(const ComplexSpec& s) {
    Ring R = s.H->ring();
    ComodData d = buildComoduleData(s);
    int cap = s.degreeCap;
    BuiltComplex out;
    out.kind = s.kind;
    // dual coordinates modulo the annihilator of the cotensor subspace
    std::vector<ChainBasis> bases(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        bases[n].tuples = d.bases[n].tuples;
        bases[n].pos = d.bases[n].pos;
        std::vector<SparseVec> rows;
        for (int i = 0; i < d.bases[n].dim; ++i) rows.push_back(d.bases[n].sub.basisVector(i));
        auto ann = kernelBasis(
            matFromRows(R, static_cast<int>(rows.size()), bases[n].ambientDim(), rows));
        bases[n].realization = ChainBasis::Realization::Quotient;
        bases[n].quot = QuotientSpace(R, bases[n].ambientDim(), ann);
        bases[n].dim = bases[n].quot.dim();
    }
    std::vector<std::vector<SparseMat>> faces(cap + 1), degs(cap + 1);
    std::vector<SparseMat> cyc(cap + 1);
    for (int n = 1; n <= cap; ++n)
        for (int i = 0; i <= n; ++i)
            faces[n].push_back(
                realizeOp(R, bases[n - 1], bases[n], d.ambFaces[n][i].transposed()));
    for (int n = 0; n < cap; ++n)
        for (int j = 0; j <= n; ++j)
            degs[n].push_back(
                realizeOp(R, bases[n + 1], bases[n], d.ambDegs[n][j].transposed()));
    for (int n = 0; n <= cap; ++n)
        cyc[n] = realizeOp(R, bases[n], bases[n], d.ambCyc[n].transposed());
    assembleObject(out, R, Direction::Cocyclic, bases, faces, degs, cyc);
    return out;
}

// ---------------------------------------------------------------------------
// Lie-algebra bicomplexes

std::vector<std::vector<int>> subsetsOf(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n - (k - static_cast<int>(cur.size())); ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// Inserts elt into the increasing list; returns sign and position list, or
// nullopt on a repeat.
std::optional<std::pair<int, std::vector<int>>> wedgeInsert(int elt,
                                                            const std::vector<int>& rest) {
    std::vector<int> out;
    int sign = 1;
    bool placed = false;
    for (int r : rest) {
        if (r == elt) return std::nullopt;
        if (!placed && r > elt) {
            out.push_back(elt);
            placed = true;
        }
        if (!placed) sign = -sign;
        out.push_back(r);
    }
    if (!placed) out.push_back(elt);
    return std::make_pair(sign, out);
}

struct LieWindow {
    Ring R;
    int gdim = 0;
    int mdim = 0;
    // per wedge degree p: subsets and index
    std::vector<std::vector<std::vector<int>>> subs;
    std::vector<std::map<std::vector<int>, int>> subPos;

    LieWindow(Ring r, int gd, int md) : R(r), gdim(gd), mdim(md) {
        for (int p = 0; p <= gdim; ++p) {
            subs.push_back(subsetsOf(gdim, p));
            std::map<std::vector<int>, int> mp;
            for (size_t i = 0; i < subs[p].size(); ++i) mp[subs[p][i]] = static_cast<int>(i);
            subPos.push_back(std::move(mp));
        }
    }
    int dimAt(int p) const {
        return (p < 0 || p > gdim) ? 0 : mdim * static_cast<int>(subs[p].size());
    }
    int idx(int p, int m, int sIdx) const { return sIdx * mdim + m; }
};

BuiltComplex buildLie(const ComplexSpec& s) {
    const LieSaydModule& LM = *s.LM;
    bool cocyclic = s.kind == ComplexKind::LieCocyclicBicomplex;
    bool relative = s.kind == ComplexKind::RelativeLie;
    Ring R = LM.ring();
    BuiltComplex out;
    out.kind = s.kind;
    out.isBicomplex = true;

    const LieAlgebra& g = LM.lie();
    std::vector<int> comp; // basis indices of the (quotient) space
    if (relative) {
        for (int i = 0; i < g.dim; ++i)
            if (std::find(s.lieSub.begin(), s.lieSub.end(), i) == s.lieSub.end())
                comp.push_back(i);
    } else {
        for (int i = 0; i < g.dim; ++i) comp.push_back(i);
    }
    int gd = static_cast<int>(comp.size());
    LieWindow W(R, gd, LM.dim());
    int cap = s.degreeCap;

    // bracket of quotient basis elements expanded in the quotient basis
    auto qBracket = [&](int a, int b) {
        SparseVec outv;
        const SparseVec& br = g.bracket[comp[a]][comp[b]];
        for (const auto& [k, c] : br) {
            auto it = std::find(comp.begin(), comp.end(), k);
            if (it != comp.end()) outv[static_cast<int>(it - comp.begin())] = c;
        }
        return outv;
    };

    Bicomplex B;
    B.ring = R;
    B.hShift = cocyclic ? -1 : +1;
    B.vShift = cocyclic ? -1 : +1;
    for (int r = 0; r <= cap; ++r)
        for (int sdeg = r; sdeg <= cap; ++sdeg) {
            int p = sdeg - r;
            if (p > gd) continue;
            B.dims[{r, sdeg}] = W.dimAt(p);
        }

    // Chevalley-Eilenberg arrow: wedge degree p -> p - 1.
    auto ceMat = [&](int p) {
        SparseMat m = SparseMat::zero(R, W.dimAt(p - 1), W.dimAt(p));
        for (size_t si = 0; si < W.subs[p].size(); ++si) {
            const auto& I = W.subs[p][si];
            for (int mi = 0; mi < W.mdim; ++mi) {
                int col = W.idx(p, mi, static_cast<int>(si));
                for (int a = 0; a < p; ++a)
                    for (int b = a + 1; b < p; ++b) {
                        // bracket sign (-1)^{a+b} (1-based): the parity that
                        // squares to zero against the right-module term below
                        int sgn = ((a + 1) + (b + 1)) % 2 == 0 ? 1 : -1;
                        std::vector<int> rest;
                        for (int k = 0; k < p; ++k)
                            if (k != a && k != b) rest.push_back(I[k]);
                        for (const auto& [e, c] : qBracket(I[a], I[b])) {
                            auto ins = wedgeInsert(e, rest);
                            if (!ins) continue;
                            int row = W.idx(p - 1, mi, W.subPos[p - 1].at(ins->second));
                            addAt(m, row, col,
                                  Scalar::fromInt(R, sgn * ins->first) * c);
                        }
                    }
                for (int a = 0; a < p; ++a) {
                    int sgn = (a + 2) % 2 == 0 ? 1 : -1; // (-1)^{a+1}, a 1-based
                    std::vector<int> rest;
                    for (int k = 0; k < p; ++k)
                        if (k != a) rest.push_back(I[k]);
                    SparseVec mv = LM.actXi(comp[I[a]], basisVec(mi, R));
                    int sIdx = W.subPos[p - 1].at(rest);
                    for (const auto& [mj, mc] : mv)
                        addAt(m, W.idx(p - 1, mj, sIdx), col, Scalar::fromInt(R, sgn) * mc);
                }
            }
        }
        return m;
    };
    // Koszul arrow: wedge degree p -> p + 1.
    auto koMat = [&](int p) {
        SparseMat m = SparseMat::zero(R, W.dimAt(p + 1), W.dimAt(p));
        for (size_t si = 0; si < W.subs[p].size(); ++si) {
            const auto& I = W.subs[p][si];
            for (int mi = 0; mi < W.mdim; ++mi) {
                int col = W.idx(p, mi, static_cast<int>(si));
                for (int e = 0; e < gd; ++e) {
                    auto ins = wedgeInsert(e, I);
                    if (!ins) continue;
                    SparseVec mv = LM.actTheta(comp[e], basisVec(mi, R));
                    int sIdx = W.subPos[p + 1].at(ins->second);
                    for (const auto& [mj, mc] : mv)
                        addAt(m, W.idx(p + 1, mj, sIdx), col,
                              Scalar::fromInt(R, ins->first) * mc);
                }
            }
        }
        return m;
    };

    auto install = [&](bool twist) {
        B.dh.clear();
        B.dv.clear();
        for (const auto& [rs, dim] : B.dims) {
            (void)dim;
            auto [r, sdeg] = rs;
            int p = sdeg - r;
            if (!cocyclic) {
                // homological: dh = CE (r+1), dv = Koszul (s+1)
                if (B.dims.count({r + 1, sdeg}) && p >= 1) B.dh[{r, sdeg}] = ceMat(p);
                if (B.dims.count({r, sdeg + 1}) && p + 1 <= gd) {
                    SparseMat kv = koMat(p);
                    if (twist && r % 2 == 1) kv = kv.scaled(Scalar::fromInt(R, -1));
                    B.dv[{r, sdeg}] = kv;
                }
            } else {
                // cohomological: dh = CE (r-1) raising wedge degree,
                // dv = Koszul (s-1) lowering wedge degree
                if (B.dims.count({r - 1, sdeg}) && p + 1 <= gd) {
                    // transpose-style assembly: evaluate on one more argument
                    SparseMat m = SparseMat::zero(R, W.dimAt(p + 1), W.dimAt(p));
                    for (size_t sj = 0; sj < W.subs[p + 1].size(); ++sj) {
                        const auto& J = W.subs[p + 1][sj];
                        for (int a = 0; a < p + 1; ++a)
                            for (int b = a + 1; b < p + 1; ++b) {
                                int sgn = ((a + 1) + (b + 1) - 1) % 2 == 0 ? 1 : -1;
                                std::vector<int> rest;
                                for (int k = 0; k < p + 1; ++k)
                                    if (k != a && k != b) rest.push_back(J[k]);
                                for (const auto& [e, c] : qBracket(J[a], J[b])) {
                                    auto ins = wedgeInsert(e, rest);
                                    if (!ins) continue;
                                    int srcS = W.subPos[p].at(ins->second);
                                    for (int mi = 0; mi < W.mdim; ++mi)
                                        addAt(m, W.idx(p + 1, mi, static_cast<int>(sj)),
                                              W.idx(p, mi, srcS),
                                              Scalar::fromInt(R, sgn * ins->first) * c);
                                }
                            }
                        for (int a = 0; a < p + 1; ++a) {
                            int sgn = (a + 2) % 2 == 0 ? 1 : -1;
                            std::vector<int> rest;
                            for (int k = 0; k < p + 1; ++k)
                                if (k != a) rest.push_back(J[k]);
                            int srcS = W.subPos[p].at(rest);
                            const SparseMat& act = LM.actionMatrix(comp[J[a]]);
                            for (int mi = 0; mi < W.mdim; ++mi)
                                for (const auto& [mj, mc] : act.row[mi])
                                    addAt(m, W.idx(p + 1, mi, static_cast<int>(sj)),
                                          W.idx(p, mj, srcS), Scalar::fromInt(R, sgn) * mc);
                        }
                    }
                    B.dh[{r, sdeg}] = m;
                }
                if (B.dims.count({r, sdeg - 1}) && p >= 1) {
                    // (d_K phi)(X~) = phi(xi_i ^ X~) theta^i
                    SparseMat m = SparseMat::zero(R, W.dimAt(p - 1), W.dimAt(p));
                    for (size_t sj = 0; sj < W.subs[p - 1].size(); ++sj) {
                        const auto& I = W.subs[p - 1][sj];
                        for (int e = 0; e < gd; ++e) {
                            auto ins = wedgeInsert(e, I);
                            if (!ins) continue;
                            int srcS = W.subPos[p].at(ins->second);
                            const SparseMat& th = LM.coactionMatrix(comp[e]);
                            for (int mi = 0; mi < W.mdim; ++mi)
                                for (const auto& [mj, mc] : th.row[mi])
                                    addAt(m, W.idx(p - 1, mi, static_cast<int>(sj)),
                                          W.idx(p, mj, srcS),
                                          Scalar::fromInt(R, ins->first) * mc);
                        }
                    }
                    if (twist && r % 2 == 1) m = m.scaled(Scalar::fromInt(R, -1));
                    B.dv[{r, sdeg}] = m;
                }
            }
        }
    };

    install(false);
    if (!B.checkSquares().empty()) {
        install(true);
        if (B.checkSquares().empty())
            out.notes.push_back("vertical differential twisted by (-1)^r to anticommute");
    }
    out.bicomplex = std::move(B);
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Dispatcher

std::string complexKindName(ComplexKind k) {
    switch (k) {
        case ComplexKind::ModuleAlgebraCocyclic: return "module_algebra_cocyclic";
        case ComplexKind::ModuleCoalgebraCocyclic: return "module_coalgebra_cocyclic";
        case ComplexKind::RelativeCocyclic: return "relative_cocyclic";
        case ComplexKind::ComoduleAlgebraCyclic: return "comodule_algebra_cyclic";
        case ComplexKind::ModuleAlgebraContra: return "module_algebra_contra";
        case ComplexKind::ModuleCoalgebraContra: return "module_coalgebra_contra";
        case ComplexKind::RelativeContra: return "relative_contra";
        case ComplexKind::ComoduleAlgebraContra: return "comodule_algebra_contra";
        case ComplexKind::OGComoduleCyclic: return "OG_comodule_cyclic";
        case ComplexKind::OGComoduleCocyclic: return "OG_comodule_cocyclic";
        case ComplexKind::LieCyclicBicomplex: return "lie_cyclic_bicomplex";
        case ComplexKind::LieCocyclicBicomplex: return "lie_cocyclic_bicomplex";
        case ComplexKind::RelativeLie: return "relative_lie";
        case ComplexKind::QCoinvariantCyclic: return "q_coinvariant_cyclic";
        case ComplexKind::QCoinvariantCocyclic: return "q_coinvariant_cocyclic";
    }
    return "?";
}

ComplexKind parseComplexKind(const std::string& name) {
    for (int k = 0; k <= static_cast<int>(ComplexKind::QCoinvariantCocyclic); ++k)
        if (complexKindName(static_cast<ComplexKind>(k)) == name)
            return static_cast<ComplexKind>(k);
    throw ParseError("unknown complex kind: " + name);
}

namespace {

Variance requiredVariance(ComplexKind k) {
    switch (k) {
        case ComplexKind::ModuleAlgebraCocyclic:
        case ComplexKind::ModuleCoalgebraCocyclic:
        case ComplexKind::RelativeCocyclic:
        case ComplexKind::ModuleAlgebraContra:
        case ComplexKind::ModuleCoalgebraContra:
        case ComplexKind::RelativeContra:
            return Variance::RightLeft;
        case ComplexKind::ComoduleAlgebraCyclic:
        case ComplexKind::ComoduleAlgebraContra:
            return Variance::LeftLeft;
        default:
            return Variance::LeftRight;
    }
}

void validateModule(const ComplexSpec& s) {
    if (!s.M) throw NonSaydCoefficientError("no coefficient module given");
    if (s.M->variance() != requiredVariance(s.kind))
        throw VarianceMismatchError(complexKindName(s.kind) + " needs " +
                                    varianceName(requiredVariance(s.kind)) +
                                    " coefficients, got " + varianceName(s.M->variance()));
    auto issues = s.M->check();
    if (!issues.empty())
        throw NonSaydCoefficientError("coefficients fail the stable AYD axioms: " + issues[0]);
}

} // namespace

BuiltComplex build(const ComplexSpec& s) {
    switch (s.kind) {
        case ComplexKind::ModuleAlgebraCocyclic:
            validateModule(s);
            if (!s.A) throw Error("module algebra input missing");
            return buildModuleAlgebraCocyclic(s);
        case ComplexKind::ModuleCoalgebraCocyclic:
            validateModule(s);
            return buildModuleCoalgebra(s, false);
        case ComplexKind::RelativeCocyclic:
            validateModule(s);
            return buildModuleCoalgebra(s, true);
        case ComplexKind::ComoduleAlgebraCyclic:
            validateModule(s);
            if (!s.A) throw Error("comodule algebra input missing");
            if (s.A->coactsLeft)
                throw VarianceMismatchError("comodule_algebra_cyclic needs a right coaction");
            return buildComoduleCyclic(s);
        case ComplexKind::ModuleAlgebraContra:
        case ComplexKind::ModuleCoalgebraContra:
        case ComplexKind::RelativeContra: {
            validateModule(s);
            ContraModule local = s.CM ? *s.CM : dualize(*s.M, s.balancingCap);
            auto issues = local.check();
            if (!issues.empty())
                throw NonSaydCoefficientError("contramodule axioms fail: " + issues[0]);
            if (s.kind == ComplexKind::ModuleAlgebraContra) {
                if (!s.A) throw Error("module algebra input missing");
                return buildModuleAlgebraContra(s, local);
            }
            return buildModuleCoalgebraContra(s, local,
                                              s.kind == ComplexKind::RelativeContra);
        }
        case ComplexKind::ComoduleAlgebraContra:
            validateModule(s);
            if (!s.A) throw Error("comodule algebra input missing");
            if (s.A->coactsLeft)
                throw VarianceMismatchError("comodule_algebra_contra needs a right coaction");
            return buildComoduleContra(s);
        case ComplexKind::OGComoduleCyclic:
        case ComplexKind::QCoinvariantCyclic:
            validateModule(s);
            if (!s.A) throw Error("comodule algebra input missing");
            if (!s.A->coactsLeft)
                throw VarianceMismatchError(complexKindName(s.kind) +
                                            " needs a left coaction");
            return buildComoduleCyclic(s);
        case ComplexKind::OGComoduleCocyclic:
        case ComplexKind::QCoinvariantCocyclic:
            validateModule(s);
            if (!s.A) throw Error("comodule algebra input missing");
            if (!s.A->coactsLeft)
                throw VarianceMismatchError(complexKindName(s.kind) +
                                            " needs a left coaction");
            return buildComoduleContra(s);
        case ComplexKind::LieCyclicBicomplex: {
            if (!s.LM) throw NonSaydCoefficientError("no Lie coefficient module given");
            auto issues = s.LM->checkSayd();
            if (!issues.empty())
                throw NonSaydCoefficientError("Lie coefficients fail stable AYD: " + issues[0]);
            return buildLie(s);
        }
        case ComplexKind::LieCocyclicBicomplex: {
            if (!s.LM) throw NonSaydCoefficientError("no Lie coefficient module given");
            std::vector<std::string> bad;
            for (const auto& msg : s.LM->checkSayd())
                if (msg.find("(iv)") == std::string::npos) bad.push_back(msg);
            for (const auto& msg : s.LM->checkUnimodularStable()) bad.push_back(msg);
            if (!bad.empty())
                throw NonSaydCoefficientError("Lie coefficients fail unimodular-stable AYD: " +
                                              bad[0]);
            return buildLie(s);
        }
        case ComplexKind::RelativeLie: {
            if (!s.LM) throw NonSaydCoefficientError("no Lie coefficient module given");
            return buildLie(s);
        }
    }
    throw Error("unhandled complex kind");
}

// ---------------------------------------------------------------------------
// Transports, pairings, membership

SparseMat reindexTransport(const BuiltComplex& from, const BuiltComplex& to, int n) {
    const ChainBasis& bf = from.bases.at(n);
    const ChainBasis& bt = to.bases.at(n);
    Ring R = from.object.ring();
    SparseMat out = SparseMat::zero(R, bt.dim, bf.dim);
    for (int j = 0; j < bf.dim; ++j) {
        SparseVec amb = liftOf(bf, j, R);
        SparseVec mapped;
        for (const auto& [i, c] : amb) {
            auto it = bt.pos.find(bf.tuples[i]);
            if (it == bt.pos.end())
                throw MorphismFailureError("transport label missing in the target complex");
            mapped[it->second] = c;
        }
        for (const auto& [r, c] : bt.reduce(mapped)) addAt(out, r, j, c);
    }
    return out;
}

SparseMat dualityPairing(const BuiltComplex& functionalSide, const BuiltComplex& moduleSide,
                         int n) {
    const ChainBasis& bf = functionalSide.bases.at(n);
    const ChainBasis& bm = moduleSide.bases.at(n);
    Ring R = functionalSide.object.ring();
    SparseMat P = SparseMat::zero(R, bf.dim, bm.dim);
    for (int r = 0; r < bf.dim; ++r) {
        SparseVec f = liftOf(bf, r, R);
        for (int c = 0; c < bm.dim; ++c) {
            SparseVec x = liftOf(bm, c, R);
            Scalar v = Scalar::zero(R);
            for (const auto& [i, fc] : f) {
                auto it = bm.pos.find(bf.tuples[i]);
                if (it == bm.pos.end()) continue;
                auto xit = x.find(it->second);
                if (xit != x.end()) v += fc * xit->second;
            }
            addAt(P, r, c, v);
        }
    }
    return P;
}

std::vector<std::string> checkCotensorMembership(const BuiltComplex& built,
                                                 const ComplexSpec& spec) {
    std::vector<std::string> issues;
    if (spec.kind != ComplexKind::ComoduleAlgebraCyclic &&
        spec.kind != ComplexKind::OGComoduleCyclic &&
        spec.kind != ComplexKind::QCoinvariantCyclic)
        return issues;
    const SaydModule& M = *spec.M;
    const CoefficientAlgebra& A = *spec.A;
    const HopfAlgebra& H = *spec.H;
    Ring R = H.ring();
    for (size_t n = 0; n < built.bases.size(); ++n) {
        const ChainBasis& b = built.bases[n];
        for (int i = 0; i < b.dim; ++i) {
            SparseVec v = liftOf(b, i, R);
            using Key = std::tuple<Word, int, std::vector<int>>;
            std::map<Key, Scalar> total;
            for (const auto& [t, cv] : v) {
                const auto& [j, slots] = b.tuples[t];
                std::function<void(size_t, AlgebraElement, std::vector<int>&, Scalar)> rec =
                    [&](size_t k, AlgebraElement wordPart, std::vector<int>& zero, Scalar c) {
                        if (c.isZero()) return;
                        if (k == slots.size()) {
                            for (const auto& [w, cw] : wordPart.terms())
                                addScaled(total, Key{w, j, zero}, c * cw);
                            return;
                        }
                        for (const auto& [key, cc] : A.coaction[slots[k]]) {
                            zero.push_back(key.second);
                            rec(k + 1, wordPart * H.alg().wordElement(key.first), zero,
                                c * cc);
                            zero.pop_back();
                        }
                    };
                std::vector<int> zero;
                rec(0, H.alg().unit(), zero, cv);
                for (const auto& [key, cm] : M.coaction(j))
                    addScaled(total, Key{key.first, key.second, slots}, -(cm * cv));
            }
            for (const auto& [key, c] : total)
                if (!c.isZero()) {
                    issues.push_back("cotensor membership fails at degree " +
                                     std::to_string(n) + " basis vector " +
                                     std::to_string(i));
                    break;
                }
        }
    }
    return issues;
}

// ---------------------------------------------------------------------------
// Relative transports

namespace {

std::vector<std::string> checkInverse(const Ring& R, const std::vector<SparseMat>& fwd,
                                      const std::vector<SparseMat>& bwd) {
    std::vector<std::string> issues;
    for (size_t n = 0; n < fwd.size(); ++n) {
        if (!(fwd[n] * bwd[n] == SparseMat::identity(R, fwd[n].rows)))
            issues.push_back("forward o backward != id at degree " + std::to_string(n));
        if (!(bwd[n] * fwd[n] == SparseMat::identity(R, bwd[n].rows)))
            issues.push_back("backward o forward != id at degree " + std::to_string(n));
    }
    return issues;
}

} // namespace

RelativeTransport relativeFromQuotient(std::shared_ptr<HopfAlgebra> H,
                                       const std::vector<int>& subGens, const SaydModule& M,
                                       int degreeCap, int tensorCap, int balancingCap) {
    ComplexSpec abs;
    abs.kind = ComplexKind::ModuleCoalgebraCocyclic;
    abs.H = H;
    abs.M = &M;
    abs.subGenerators = subGens;
    abs.degreeCap = degreeCap;
    abs.tensorCap = tensorCap;
    abs.balancingCap = balancingCap;
    ComplexSpec rel = abs;
    rel.kind = ComplexKind::RelativeCocyclic;

    RelativeTransport out;
    out.absolute = build(abs);
    out.relative = build(rel);

    CoalgCtx ctx(abs, subGens);
    Ring R = H->ring();
    for (int n = 0; n <= degreeCap; ++n) {
        const ChainBasis& ba = out.absolute.bases[n];
        const ChainBasis& br = out.relative.bases[n];
        // forward: m (x) c0 ... cn -> m h01 (x)_K S(h02).(c1 ... cn)
        SparseMat fAmb = SparseMat::zero(R, br.ambientDim(), ba.ambientDim());
        for (int t = 0; t < ba.ambientDim(); ++t) {
            const auto& [j, slots] = ba.tuples[t];
            const Word& h0 = ctx.C.cosetWord(slots[0]);
            TensorElement cop = H->coproductWord(h0);
            LabelVec lv;
            for (const auto& [wt, c] : cop.terms()) {
                SparseVec mv = M.actWord(wt[0], basisVec(j, R));
                AlgebraElement Sh2 = H->antipodeWord(wt[1]);
                std::vector<int> rest(slots.begin() + 1, slots.end());
                ctx.diagAct(Sh2, rest, c, [&](const std::vector<int>& ns, const Scalar& cc) {
                    for (const auto& [jj, jc] : mv) addLabel(lv, jj, ns, cc * jc);
                });
            }
            auto vec = toIndexed(br, lv);
            if (!vec) throw MorphismFailureError("transport image leaves the tuple window");
            for (const auto& [r, c] : *vec) addAt(fAmb, r, t, c);
        }
        SparseMat bAmb = SparseMat::zero(R, ba.ambientDim(), br.ambientDim());
        for (int t = 0; t < br.ambientDim(); ++t) {
            const auto& [j, slots] = br.tuples[t];
            int id = ba.indexOf(j, withInsert(slots, 0, ctx.oneCoset));
            if (id < 0) throw MorphismFailureError("transport image leaves the tuple window");
            addAt(bAmb, id, t, Scalar::one(R));
        }
        out.forward.push_back(realizeOp(R, ba, br, fAmb));
        out.backward.push_back(realizeOp(R, br, ba, bAmb));
    }
    out.issues = checkInverse(R, out.forward, out.backward);
    return out;
}

RelativeTransport relativeFromQuotientContra(std::shared_ptr<HopfAlgebra> H,
                                             const std::vector<int>& subGens,
                                             const SaydModule& M, const ContraModule& CM,
                                             int degreeCap, int tensorCap, int balancingCap) {
    ComplexSpec abs;
    abs.kind = ComplexKind::ModuleCoalgebraContra;
    abs.H = H;
    abs.M = &M;
    abs.CM = &CM;
    abs.subGenerators = subGens;
    abs.degreeCap = degreeCap;
    abs.tensorCap = tensorCap;
    abs.balancingCap = balancingCap;
    ComplexSpec rel = abs;
    rel.kind = ComplexKind::RelativeContra;

    RelativeTransport out;
    out.absolute = build(abs);
    out.relative = build(rel);

    CoalgCtx ctx(abs, subGens);
    Ring R = H->ring();
    int vd = CM.dim();
    for (int n = 0; n <= degreeCap; ++n) {
        const ChainBasis& ba = out.absolute.bases[n];
        const ChainBasis& br = out.relative.bases[n];
        // forward (Lambda): (L psi)(c1..cn) = psi(1bar (x) c~)
        auto fwdFn = [&](const std::vector<int>& y, PullHelper& h) {
            h.addScalar(withInsert(y, 0, ctx.oneCoset), Scalar::one(R));
        };
        SparseMat fAmb = pullAmbient(R, br, ba, vd, fwdFn);
        // backward: (L^-1 phi)(c0..cn) = h01 |> phi(S(h02).(c1..cn))
        auto bwdFn = [&](const std::vector<int>& y, PullHelper& h) {
            const Word& h0 = ctx.C.cosetWord(y[0]);
            TensorElement cop = ctx.H.coproductWord(h0);
            for (const auto& [wt, c] : cop.terms()) {
                SparseMat outer = actionWordMatrix(CM, wt[0]);
                AlgebraElement Sh2 = ctx.H.antipodeWord(wt[1]);
                std::vector<int> rest(y.begin() + 1, y.end());
                ctx.diagAct(Sh2, rest, c, [&](const std::vector<int>& ns, const Scalar& cc) {
                    h.addMat(ns, outer.scaled(cc));
                });
            }
        };
        SparseMat bAmb = pullAmbient(R, ba, br, vd, bwdFn);
        out.forward.push_back(realizeOp(R, ba, br, fAmb));
        out.backward.push_back(realizeOp(R, br, ba, bAmb));
    }
    out.issues = checkInverse(R, out.forward, out.backward);
    return out;
}

// ---------------------------------------------------------------------------
// Coinvariants and coefficient transfer

CoinvariantAlgebra coinvariantSubalgebra(std::shared_ptr<HopfAlgebra> O,
                                         const std::vector<SparseMat>& subActions,
                                         const std::vector<Scalar>& subCounits, int degreeCap) {
    CoinvariantAlgebra out;
    Ring R = O->ring();
    const auto& P = O->alg();
    BasisIndex basis(P.basisUpTo(degreeCap));
    int N = basis.size();
    std::vector<SparseVec> rows;
    for (size_t k = 0; k < subActions.size(); ++k) {
        const SparseMat& L = subActions[k];
        for (int r = 0; r < N; ++r) {
            SparseVec row = L.row[r];
            auto it = row.find(r);
            Scalar diag = (it == row.end() ? Scalar::zero(R) : it->second) - subCounits[k];
            if (diag.isZero()) {
                row.erase(r);
            } else {
                row[r] = diag;
            }
            if (!row.empty()) rows.push_back(std::move(row));
        }
    }
    auto ker = kernelBasis(matFromRows(R, static_cast<int>(rows.size()), N, rows));
    SubSpace span(R, N, ker);
    out.inclusion.clear();
    for (int i = 0; i < span.dim(); ++i) out.inclusion.push_back(span.basisVector(i));

    CoefficientAlgebra& A = out.algebra;
    A.H = O;
    A.coactsLeft = true;
    A.dim = span.dim();
    for (int i = 0; i < A.dim; ++i) {
        std::ostringstream os;
        bool first = true;
        for (const auto& [w, c] : out.inclusion[i]) {
            if (!first) os << " + ";
            os << c.str() << "*" << P.wordStr(basis.words[w]);
            first = false;
        }
        A.labels.push_back(os.str());
    }
    A.degrees.assign(A.dim, 0);
    {
        SparseVec unitAmb = basisVec(basis.indexOf(Word()), R);
        auto c = span.coords(unitAmb);
        if (!c) {
            out.issues.push_back("1 is not coinvariant");
            A.unit = {};
        } else {
            A.unit = *c;
        }
    }
    A.mult.assign(A.dim, std::vector<std::optional<SparseVec>>(A.dim));
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            SparseVec amb;
            bool ok = true;
            for (const auto& [wi, ci] : out.inclusion[i])
                for (const auto& [wj, cj] : out.inclusion[j]) {
                    AlgebraElement pr =
                        P.wordElement(basis.words[wi]) * P.wordElement(basis.words[wj]);
                    for (const auto& [w, c] : pr.terms()) {
                        if (basis.pos.find(w) == basis.pos.end()) {
                            ok = false;
                            break;
                        }
                        addScaled(amb, basis.pos.at(w), ci * cj * c);
                    }
                    if (!ok) break;
                }
            if (!ok) continue; // product escapes the degree window
            for (auto it = amb.begin(); it != amb.end();)
                it = it->second.isZero() ? amb.erase(it) : std::next(it);
            auto c = span.coords(amb);
            if (!c) {
                out.issues.push_back("product of coinvariants " + std::to_string(i) + "," +
                                     std::to_string(j) + " is not coinvariant");
                continue;
            }
            A.mult[i][j] = *c;
        }
    for (int i = 0; i < A.dim; ++i) {
        std::map<Word, SparseVec> byWord;
        for (const auto& [wi, ci] : out.inclusion[i]) {
            TensorElement cop = O->coproductWord(basis.words[wi]);
            for (const auto& [wt, c] : cop.terms()) {
                if (basis.pos.find(wt[1]) == basis.pos.end()) {
                    out.issues.push_back("coaction leg escapes the window at basis " +
                                         std::to_string(i));
                    continue;
                }
                addScaled(byWord[wt[0]], basis.pos.at(wt[1]), ci * c);
            }
        }
        CoactionTerms terms;
        for (auto& [w, amb] : byWord) {
            for (auto it = amb.begin(); it != amb.end();)
                it = it->second.isZero() ? amb.erase(it) : std::next(it);
            if (amb.empty()) continue;
            auto c = span.coords(amb);
            if (!c) {
                out.issues.push_back("coaction of basis " + std::to_string(i) +
                                     " leaves the coinvariant span");
                continue;
            }
            for (const auto& [jj, cc] : *c) addScaled(terms, std::make_pair(w, jj), cc);
        }
        A.coaction.push_back(std::move(terms));
    }
    return out;
}

SaydModule transferCoefficients(const SaydModule& M, std::shared_ptr<HopfAlgebra> O,
                                const PairingFn& pairing, int degreeCap) {
    if (M.variance() != Variance::RightLeft)
        throw VarianceMismatchError("transfer needs right-left coefficients");
    Ring R = O->ring();
    const auto& U = M.hopf().alg();
    const auto& P = O->alg();
    std::vector<Word> uWords = U.basisUpTo(degreeCap);
    std::vector<Word> oWords = P.basisUpTo(degreeCap);
    if (uWords.size() != oWords.size())
        throw DegeneratePairingError("pairing blocks are not square up to degree " +
                                     std::to_string(degreeCap));
    int N = static_cast<int>(uWords.size());
    SparseMat G = SparseMat::zero(R, N, N);
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) addAt(G, r, c, pairing(uWords[r], oWords[c]));
    SparseMat Ginv;
    try {
        Ginv = inverseMatrix(G);
    } catch (const NotInvertibleError&) {
        throw DegeneratePairingError("pairing matrix is singular up to degree " +
                                     std::to_string(degreeCap));
    }

    SaydModule out(O, M.dim(), Variance::LeftRight);
    // left action of O-generators: (alpha |> f)(m) = f(m <| alpha),
    // (m <| alpha) = <m(-1), alpha> m(0)
    for (size_t g = 0; g < P.generators().size(); ++g) {
        Word gw(1, static_cast<char>(g));
        SparseMat Rg = SparseMat::zero(R, M.dim(), M.dim());
        for (int j = 0; j < M.dim(); ++j)
            for (const auto& [key, c] : M.coaction(j))
                addAt(Rg, key.second, j, c * pairing(key.first, gw));
        out.setActionMatrix(static_cast<int>(g), Rg.transposed());
    }
    // right coaction over O dual to the right action of U on M:
    // <f(1), u> f(0) = u . f, i.e. sum_beta <u, beta> X_beta = (act_u)^T
    std::vector<SparseMat> X(N, SparseMat::zero(R, M.dim(), M.dim()));
    for (int r = 0; r < N; ++r) {
        SparseMat Au = SparseMat::zero(R, M.dim(), M.dim());
        for (int j = 0; j < M.dim(); ++j)
            for (const auto& [i, c] : M.actWord(uWords[r], basisVec(j, R))) addAt(Au, i, j, c);
        SparseMat At = Au.transposed();
        for (int b = 0; b < N; ++b) {
            Scalar g = Ginv.get(b, r);
            if (!g.isZero()) X[b] = X[b] + At.scaled(g);
        }
    }
    for (int v = 0; v < M.dim(); ++v) {
        CoactionTerms terms;
        for (int b = 0; b < N; ++b)
            for (int vp = 0; vp < M.dim(); ++vp) {
                Scalar c = X[b].get(vp, v);
                if (!c.isZero()) addScaled(terms, std::make_pair(oWords[b], vp), c);
            }
        out.setCoaction(v, terms);
    }
    return out;
}

} // namespace hopfcyc

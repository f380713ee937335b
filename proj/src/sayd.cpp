#include "hopfcyc/sayd.hpp"

#include "hopfcyc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace hopfcyc {

namespace {

SparseVec unitVec(int i, const Ring& R) {
    SparseVec v;
    v.emplace(i, Scalar::one(R));
    return v;
}

void addTo(std::map<std::pair<Word, int>, Scalar>& out, const Word& w, int i,
           const Scalar& c) {
    if (c.isZero()) return;
    auto it = out.emplace(std::make_pair(w, i), Scalar::zero(c.ring())).first;
    it->second = it->second + c;
    if (it->second.isZero()) out.erase(it);
}

} // namespace

std::string varianceName(Variance v) {
    switch (v) {
        case Variance::RightLeft: return "right-left";
        case Variance::LeftLeft: return "left-left";
        case Variance::LeftRight: return "left-right";
        case Variance::RightRight: return "right-right";
    }
    return "?";
}

SaydModule::SaydModule(std::shared_ptr<HopfAlgebra> H, int dim, Variance variance)
    : H_(std::move(H)), dim_(dim), var_(variance) {
    size_t n = H_->alg().generators().size();
    act_.assign(n, SparseMat::identity(H_->ring(), dim_));
    coact_.assign(dim_, CoactionTerms{});
}

void SaydModule::setActionMatrix(int gen, SparseMat m) {
    if (m.rows != dim_ || m.cols != dim_)
        throw SlotMismatchError("action matrix dimension mismatch");
    act_.at(gen) = std::move(m);
}

void SaydModule::setCoaction(int basis, CoactionTerms terms) {
    coact_.at(basis) = std::move(terms);
}

SparseVec SaydModule::actWord(const Word& w, const SparseVec& v) const {
    SparseVec out = v;
    if (actsOnLeft()) {
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            out = act_.at(static_cast<unsigned char>(*it)).apply(out);
    } else {
        for (char ch : w) out = act_.at(static_cast<unsigned char>(ch)).apply(out);
    }
    return out;
}

SparseVec SaydModule::act(const AlgebraElement& h, const SparseVec& v) const {
    SparseVec out;
    for (const auto& [w, c] : h.terms()) sparseAxpy(out, c, actWord(w, v));
    return out;
}

CoactionTerms SaydModule::coactionOf(const SparseVec& v) const {
    CoactionTerms out;
    for (const auto& [j, c] : v)
        for (const auto& [key, d] : coact_.at(j)) addTo(out, key.first, key.second, c * d);
    return out;
}

std::vector<std::string> SaydModule::check() const {
    std::vector<std::string> issues;
    const Presentation& p = H_->alg();
    Ring R = p.ring();
    auto push = [&](const std::string& s) {
        if (issues.size() < 40) issues.push_back(s);
    };

    auto wordMatrix = [&](const Word& w) {
        SparseMat m = SparseMat::identity(R, dim_);
        if (actsOnLeft()) {
            for (char ch : w) m = m * act_.at(static_cast<unsigned char>(ch));
        } else {
            for (char ch : w) m = act_.at(static_cast<unsigned char>(ch)) * m;
        }
        return m;
    };

    // module: the action respects the defining relations
    for (const Rule& r : p.rules()) {
        SparseMat lhs = wordMatrix(r.lhs);
        SparseMat rhs = SparseMat::zero(R, dim_, dim_);
        for (const auto& [w, c] : r.rhs) rhs = rhs + wordMatrix(w).scaled(c);
        if (!(lhs == rhs))
            push("action violates relation with leading word " + p.wordStr(r.lhs));
    }

    // comodule: counit and coassociativity
    for (int m = 0; m < dim_; ++m) {
        SparseVec eps;
        for (const auto& [key, c] : coact_.at(m))
            sparseAxpy(eps, c * H_->counitWord(key.first), unitVec(key.second, R));
        if (!(eps == unitVec(m, R)))
            push("coaction counit fails on basis " + std::to_string(m));

        std::map<std::tuple<int, Word, Word>, Scalar> viaDelta, viaNabla;
        for (const auto& [key, c] : coact_.at(m)) {
            TensorElement dw = H_->coproductWord(key.first);
            for (const auto& [t, d] : dw.terms()) {
                auto k = std::make_tuple(key.second, t[0], t[1]);
                auto it = viaDelta.emplace(k, Scalar::zero(R)).first;
                it->second = it->second + c * d;
                if (it->second.isZero()) viaDelta.erase(it);
            }
            for (const auto& [key2, d] : coact_.at(key.second)) {
                // nested coaction: inner leg key2.first sits next to the module
                auto k = coactsOnLeft()
                             ? std::make_tuple(key2.second, key.first, key2.first)
                             : std::make_tuple(key2.second, key2.first, key.first);
                auto it = viaNabla.emplace(k, Scalar::zero(R)).first;
                it->second = it->second + c * d;
                if (it->second.isZero()) viaNabla.erase(it);
            }
        }
        if (!(viaDelta == viaNabla))
            push("coaction coassociativity fails on basis " + std::to_string(m));
    }

    // AYD compatibility on generators x basis
    for (size_t g = 0; g < p.generators().size(); ++g) {
        Word gw(1, static_cast<char>(g));
        TensorElement d3 = H_->coproductIter(p.gen(static_cast<int>(g)), 3);
        for (int m = 0; m < dim_; ++m) {
            CoactionTerms lhs = coactionOf(actWord(gw, unitVec(m, R)));
            CoactionTerms rhs;
            for (const auto& [t, c] : d3.terms()) {
                const Word &h1 = t[0], &h2 = t[1], &h3 = t[2];
                for (const auto& [key, d] : coact_.at(m)) {
                    AlgebraElement leg(&p);
                    switch (var_) {
                        case Variance::RightLeft:
                            leg = H_->antipodeWord(h3) * p.wordElement(key.first) *
                                  p.wordElement(h1);
                            break;
                        case Variance::LeftLeft:
                            leg = p.wordElement(h3) * p.wordElement(key.first) *
                                  H_->antipodeWord(h1);
                            break;
                        case Variance::LeftRight:
                            leg = p.wordElement(h3) * p.wordElement(key.first) *
                                  H_->antipodeWord(h1);
                            break;
                        case Variance::RightRight:
                            leg = H_->antipodeWord(h1) * p.wordElement(key.first) *
                                  p.wordElement(h3);
                            break;
                    }
                    SparseVec mod = actWord(h2, unitVec(key.second, R));
                    for (const auto& [u, cu] : leg.terms())
                        for (const auto& [i2, cv] : mod) addTo(rhs, u, i2, c * d * cu * cv);
                }
            }
            if (!(lhs == rhs))
                push("AYD condition fails for generator " + p.generators()[g].name +
                     " on basis " + std::to_string(m));
        }
    }

    // stability
    for (int m = 0; m < dim_; ++m) {
        SparseVec s;
        for (const auto& [key, c] : coact_.at(m))
            sparseAxpy(s, c, actWord(key.first, unitVec(key.second, R)));
        if (!(s == unitVec(m, R))) push("stability fails on basis " + std::to_string(m));
    }
    return issues;
}

std::string SaydModule::describe() const {
    std::ostringstream os;
    os << varianceName(var_) << " dim " << dim_ << " over " << H_->alg().name();
    os << "; action:";
    const Presentation& p = H_->alg();
    for (size_t g = 0; g < act_.size(); ++g) {
        os << " " << p.generators()[g].name << "->[";
        bool first = true;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                Scalar c = act_[g].get(i, j);
                if (c.isZero()) continue;
                if (!first) os << ",";
                first = false;
                os << i << j << ":" << c.str();
            }
        os << "]";
    }
    os << "; coaction:";
    for (int m = 0; m < dim_; ++m) {
        os << " " << m << "->[";
        bool first = true;
        for (const auto& [key, c] : coact_[m]) {
            if (!first) os << ",";
            first = false;
            os << p.wordStr(key.first) << "|" << key.second << ":" << c.str();
        }
        os << "]";
    }
    return os.str();
}

ContraModule::ContraModule(std::shared_ptr<HopfAlgebra> H, int dim, int degreeBound)
    : H_(std::move(H)), dim_(dim), bound_(degreeBound) {
    act_.assign(H_->alg().generators().size(), SparseMat::identity(H_->ring(), dim_));
}

void ContraModule::setActionMatrix(int gen, SparseMat m) {
    if (m.rows != dim_ || m.cols != dim_)
        throw SlotMismatchError("action matrix dimension mismatch");
    act_.at(gen) = std::move(m);
}

void ContraModule::setAlphaMatrix(const Word& w, SparseMat m) {
    if (H_->alg().degreeOf(w) > bound_)
        throw DegreeOverflowError("alpha support word exceeds the degree bound");
    if (m.isZero()) return;
    alpha_.insert_or_assign(w, std::move(m));
}

SparseMat ContraModule::alphaMatrix(const Word& w) const {
    auto it = alpha_.find(w);
    if (it != alpha_.end()) return it->second;
    return SparseMat::zero(H_->ring(), dim_, dim_);
}

SparseVec ContraModule::actWord(const Word& w, const SparseVec& v) const {
    SparseVec out = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out = act_.at(static_cast<unsigned char>(*it)).apply(out);
    return out;
}

SparseVec ContraModule::act(const AlgebraElement& h, const SparseVec& v) const {
    SparseVec out;
    for (const auto& [w, c] : h.terms()) sparseAxpy(out, c, actWord(w, v));
    return out;
}

SparseVec ContraModule::alpha(const FiniteMap& f) const {
    SparseVec out;
    for (const auto& [w, val] : f) {
        if (H_->alg().degreeOf(w) > bound_)
            throw DegreeOverflowError("alpha argument supported beyond the degree bound");
        auto it = alpha_.find(w);
        if (it == alpha_.end()) continue;
        sparseAxpy(out, Scalar::one(H_->ring()), it->second.apply(val));
    }
    return out;
}

std::vector<std::string> ContraModule::check() const {
    std::vector<std::string> issues;
    const Presentation& p = H_->alg();
    Ring R = p.ring();
    auto push = [&](const std::string& s) {
        if (issues.size() < 40) issues.push_back(s);
    };

    // the action respects relations
    auto wordMatrix = [&](const Word& w) {
        SparseMat m = SparseMat::identity(R, dim_);
        for (char ch : w) m = m * act_.at(static_cast<unsigned char>(ch));
        return m;
    };
    for (const Rule& r : p.rules()) {
        SparseMat lhs = wordMatrix(r.lhs);
        SparseMat rhs = SparseMat::zero(R, dim_, dim_);
        for (const auto& [w, c] : r.rhs) rhs = rhs + wordMatrix(w).scaled(c);
        if (!(lhs == rhs))
            push("action violates relation with leading word " + p.wordStr(r.lhs));
    }

    // (ii) alpha(r_mu) = mu with r_mu(h) = h.mu
    for (int m = 0; m < dim_; ++m) {
        SparseVec out;
        for (const auto& [w, A] : alpha_)
            sparseAxpy(out, Scalar::one(R), A.apply(actWord(w, unitVec(m, R))));
        if (!(out == unitVec(m, R)))
            push("alpha(r_mu) != mu on basis " + std::to_string(m));
    }

    // (i) h.alpha(f) = alpha(h_(2) . f(S(h_(3)) _ h_(1))) on generators and
    // the spanning family f_{w,j}
    std::vector<Word> spanning = p.basisUpTo(bound_);
    for (size_t g = 0; g < p.generators().size(); ++g) {
        TensorElement d3 = H_->coproductIter(p.gen(static_cast<int>(g)), 3);
        Word gw(1, static_cast<char>(g));
        for (const Word& w : spanning) {
            for (int j = 0; j < dim_; ++j) {
                try {
                    SparseVec lhs = actWord(gw, alphaMatrix(w).apply(unitVec(j, R)));
                    SparseVec rhs;
                    for (const auto& [u, A] : alpha_) {
                        // f'(u) = sum h2 . f(S(h3) u h1), f picks the w-coefficient
                        SparseVec fu;
                        for (const auto& [t, c] : d3.terms()) {
                            AlgebraElement arg = H_->antipodeWord(t[2]) * p.wordElement(u) *
                                                 p.wordElement(t[0]);
                            Scalar cw = arg.coeff(w);
                            if (cw.isZero()) continue;
                            sparseAxpy(fu, c * cw, actWord(t[1], unitVec(j, R)));
                        }
                        sparseAxpy(rhs, Scalar::one(R), A.apply(fu));
                    }
                    if (!(lhs == rhs))
                        push("contra-action compatibility fails for generator " +
                             p.generators()[g].name + " at word " + p.wordStr(w));
                } catch (const DegreeOverflowError&) {
                    // conjugated argument escapes the realized window; skip
                }
            }
        }
    }
    return issues;
}

ContraModule dualize(const SaydModule& M, int degreeBound) {
    if (M.variance() != Variance::RightLeft)
        throw VarianceMismatchError("dualize expects a right-left SAYD module");
    ContraModule C(M.hopfShared(), M.dim(), degreeBound);
    Ring R = M.ring();
    for (size_t g = 0; g < M.hopf().alg().generators().size(); ++g)
        C.setActionMatrix(static_cast<int>(g),
                          M.actionMatrix(static_cast<int>(g)).transposed());
    std::map<Word, SparseMat> mats;
    for (int m = 0; m < M.dim(); ++m)
        for (const auto& [key, c] : M.coaction(m)) {
            auto it = mats.emplace(key.first, SparseMat::zero(R, M.dim(), M.dim())).first;
            it->second.set(m, key.second, it->second.get(m, key.second) + c);
        }
    for (auto& [w, A] : mats) C.setAlphaMatrix(w, std::move(A));
    return C;
}

LieAlgebra LieAlgebra::abelian(Ring ring, int n) {
    LieAlgebra g;
    g.ring = ring;
    g.dim = n;
    for (int i = 0; i < n; ++i) g.names.push_back("X" + std::to_string(i + 1));
    g.bracket.assign(n, std::vector<SparseVec>(n));
    return g;
}

LieAlgebra LieAlgebra::nonabelian2(Ring ring) {
    LieAlgebra g = abelian(ring, 2);
    g.names = {"X", "Y"};
    // [X, Y] = X
    g.bracket[0][1] = unitVec(0, ring);
    g.bracket[1][0] = sparseScale(unitVec(0, ring), Scalar::fromInt(ring, -1));
    return g;
}

LieAlgebra LieAlgebra::sl2(Ring ring) {
    LieAlgebra g = abelian(ring, 3);
    g.names = {"F", "H", "E"};
    auto v = [&](int i, long c) { return sparseScale(unitVec(i, ring), Scalar::fromInt(ring, c)); };
    // [H,E] = 2E, [H,F] = -2F, [E,F] = H
    g.bracket[1][2] = v(2, 2);
    g.bracket[2][1] = v(2, -2);
    g.bracket[1][0] = v(0, -2);
    g.bracket[0][1] = v(0, 2);
    g.bracket[2][0] = v(1, 1);
    g.bracket[0][2] = v(1, -1);
    return g;
}

SparseVec LieAlgebra::bracketOf(const SparseVec& a, const SparseVec& b) const {
    SparseVec out;
    for (const auto& [i, ci] : a)
        for (const auto& [j, cj] : b) sparseAxpy(out, ci * cj, bracket[i][j]);
    return out;
}

std::vector<std::string> LieAlgebra::checkJacobi() const {
    std::vector<std::string> issues;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            // antisymmetry
            SparseVec s = sparseAdd(bracket[i][j], bracket[j][i]);
            if (!s.empty()) issues.push_back("bracket not antisymmetric at " +
                                             std::to_string(i) + "," + std::to_string(j));
            for (int k = 0; k < dim; ++k) {
                SparseVec jac = bracketOf(bracket[i][j], unitVec(k, ring));
                sparseAxpy(jac, Scalar::one(ring), bracketOf(bracket[j][k], unitVec(i, ring)));
                sparseAxpy(jac, Scalar::one(ring), bracketOf(bracket[k][i], unitVec(j, ring)));
                if (!jac.empty())
                    issues.push_back("Jacobi fails at " + std::to_string(i) + "," +
                                     std::to_string(j) + "," + std::to_string(k));
            }
        }
    return issues;
}

LieSaydModule::LieSaydModule(LieAlgebra g, int dim) : g_(std::move(g)), dim_(dim) {
    act_.assign(g_.dim, SparseMat::zero(g_.ring, dim_, dim_));
    coact_.assign(g_.dim, SparseMat::zero(g_.ring, dim_, dim_));
}

void LieSaydModule::setActionMatrix(int i, SparseMat m) { act_.at(i) = std::move(m); }
void LieSaydModule::setCoactionMatrix(int i, SparseMat m) { coact_.at(i) = std::move(m); }

std::vector<std::string> LieSaydModule::checkSayd() const {
    std::vector<std::string> issues;
    Ring R = g_.ring;
    // (i) m[X,Y] = (mX)Y - (mY)X
    for (int i = 0; i < g_.dim; ++i)
        for (int j = 0; j < g_.dim; ++j) {
            SparseMat lhs = SparseMat::zero(R, dim_, dim_);
            for (const auto& [k, c] : g_.bracket[i][j]) lhs = lhs + act_[k].scaled(c);
            SparseMat rhs = act_[j] * act_[i] - act_[i] * act_[j];
            if (!(lhs == rhs)) {
                issues.push_back("axiom (i) fails at [" + g_.names[i] + "," + g_.names[j] + "]");
            }
        }
    // (ii) m[-2] ^ m[-1] (x) m[0] = 0  <=> coaction legs commute
    for (int i = 0; i < g_.dim; ++i)
        for (int j = i + 1; j < g_.dim; ++j)
            if (!(coact_[i] * coact_[j] == coact_[j] * coact_[i]))
                issues.push_back("axiom (ii) fails at legs " + g_.names[i] + "," + g_.names[j]);
    // (iii) nabla(mX) = m[-1] (x) m[0]X + [m[-1],X] (x) m[0]
    for (int k = 0; k < g_.dim; ++k)
        for (int i = 0; i < g_.dim; ++i) {
            SparseMat lhs = coact_[i] * act_[k];
            SparseMat rhs = act_[k] * coact_[i];
            for (int j = 0; j < g_.dim; ++j) {
                auto it = g_.bracket[j][k].find(i);
                if (it != g_.bracket[j][k].end()) rhs = rhs + coact_[j].scaled(it->second);
            }
            if (!(lhs == rhs))
                issues.push_back("axiom (iii) fails for X=" + g_.names[k] + " leg " +
                                 g_.names[i]);
        }
    // (iv) m[0] m[-1] = 0
    SparseMat stab = SparseMat::zero(R, dim_, dim_);
    for (int i = 0; i < g_.dim; ++i) stab = stab + act_[i] * coact_[i];
    if (!stab.isZero()) issues.push_back("axiom (iv) stability fails");
    return issues;
}

std::vector<std::string> LieSaydModule::checkUnimodularStable() const {
    std::vector<std::string> issues;
    SparseMat s = SparseMat::zero(g_.ring, dim_, dim_);
    for (int i = 0; i < g_.dim; ++i) s = s + coact_[i] * act_[i];
    if (!s.isZero()) issues.push_back("unimodular stability (m xi_i) theta^i = 0 fails");
    return issues;
}

bool LieSaydModule::locallyConilpotent() const {
    int p = dim_ * g_.dim + 1;
    // coaction legs commute for AYD modules; enumerate commuting monomials
    std::vector<SparseMat> frontier{SparseMat::identity(g_.ring, dim_)};
    for (int step = 0; step < p; ++step) {
        std::vector<SparseMat> next;
        for (const auto& m : frontier)
            for (int i = 0; i < g_.dim; ++i) next.push_back(coact_[i] * m);
        frontier = std::move(next);
    }
    for (const auto& m : frontier)
        if (!m.isZero()) return false;
    return true;
}

LieSaydModule lieDualUnimodular(const LieSaydModule& M) {
    auto issues = M.checkSayd();
    if (!issues.empty())
        throw NonSaydCoefficientError("lie_dual_unimodular needs a stable AYD module: " +
                                      issues.front());
    LieSaydModule D(M.lie(), M.dim());
    for (int i = 0; i < M.lie().dim; ++i) {
        D.setActionMatrix(i, M.actionMatrix(i).transposed().scaled(
                                 Scalar::fromInt(M.ring(), -1)));
        D.setCoactionMatrix(i, M.coactionMatrix(i).transposed());
    }
    return D;
}

namespace {

std::vector<Scalar> characterCandidates(const Ring& R) {
    std::vector<Scalar> out{Scalar::zero(R), Scalar::one(R), Scalar::fromInt(R, -1)};
    if (R.kind == RingKind::FunctionField) {
        for (int k : {1, -1, 2, -2}) {
            out.push_back(Scalar::varPower(R, k));
            out.push_back(-Scalar::varPower(R, k));
        }
    } else if (R.kind == RingKind::Cyclotomic) {
        for (int k = 1; k < R.param; ++k) {
            out.push_back(Scalar::varPower(R, k));
            out.push_back(-Scalar::varPower(R, k));
        }
    } else if (R.kind == RingKind::Series) {
        for (int c : {1, -1, 2, -2}) out.push_back(Scalar::expSeries(R, c));
    }
    return out;
}

// All multiplicative assignments generator -> scalar consistent with the rules.
std::vector<std::vector<Scalar>> characters(const Presentation& p) {
    Ring R = p.ring();
    auto cands = characterCandidates(R);
    size_t n = p.generators().size();
    std::vector<std::vector<Scalar>> out;
    std::vector<Scalar> cur(n, Scalar::zero(R));
    auto ruleOk = [&](size_t depth) {
        // check every rule whose letters are all assigned (max letter == depth)
        for (const Rule& r : p.rules()) {
            size_t maxIdx = 0;
            bool involves = false;
            auto scan = [&](const Word& w) {
                for (char ch : w) {
                    size_t i = static_cast<unsigned char>(ch);
                    maxIdx = std::max(maxIdx, i);
                    if (i == depth) involves = true;
                }
            };
            scan(r.lhs);
            for (const auto& [w, c] : r.rhs) scan(w);
            if (!involves || maxIdx > depth) continue;
            Scalar lhs = Scalar::one(R);
            for (char ch : r.lhs) lhs = lhs * cur[static_cast<unsigned char>(ch)];
            Scalar rhs = Scalar::zero(R);
            for (const auto& [w, c] : r.rhs) {
                Scalar t = c;
                for (char ch : w) t = t * cur[static_cast<unsigned char>(ch)];
                rhs = rhs + t;
            }
            if (!(lhs == rhs)) return false;
        }
        return true;
    };
    std::function<void(size_t)> dfs = [&](size_t depth) {
        if (depth == n) {
            out.push_back(cur);
            return;
        }
        for (const Scalar& c : cands) {
            cur[depth] = c;
            if (ruleOk(depth)) dfs(depth + 1);
        }
    };
    dfs(0);
    return out;
}

std::vector<Word> grouplikeWords(const HopfAlgebra& H, int cap) {
    std::vector<Word> out;
    for (const Word& w : H.alg().basisUpTo(cap)) {
        try {
            TensorElement dw = H.coproductWord(w);
            TensorElement grp = TensorElement::tensorOf(
                {H.alg().wordElement(w), H.alg().wordElement(w)});
            if (dw == grp && H.counitWord(w).isOne()) out.push_back(w);
        } catch (const DegreeOverflowError&) {
        }
    }
    return out;
}

SaydModule buildDim1(std::shared_ptr<HopfAlgebra> H, Variance var,
                     const std::vector<Scalar>& chi, const Word& sigma) {
    SaydModule M(H, 1, var);
    Ring R = H->ring();
    for (size_t g = 0; g < chi.size(); ++g) {
        SparseMat m = SparseMat::zero(R, 1, 1);
        m.set(0, 0, chi[g]);
        M.setActionMatrix(static_cast<int>(g), std::move(m));
    }
    CoactionTerms t;
    t.emplace(std::make_pair(sigma, 0), Scalar::one(R));
    M.setCoaction(0, std::move(t));
    return M;
}

} // namespace

std::vector<SaydModule> solveSayd1(std::shared_ptr<HopfAlgebra> H, Variance variance,
                                   int grouplikeDegreeCap) {
    std::vector<SaydModule> out;
    auto chis = characters(H->alg());
    auto sigmas = grouplikeWords(*H, grouplikeDegreeCap);
    for (const auto& chi : chis)
        for (const Word& s : sigmas) {
            SaydModule M = buildDim1(H, variance, chi, s);
            try {
                if (M.check().empty()) out.push_back(std::move(M));
            } catch (const DegreeOverflowError&) {
                // candidate at the representation boundary; not certifiable
            }
        }
    return out;
}

namespace {

// Exact residuals of all SAYD axioms, keyed deterministically; linear in any
// strictly-triangular action perturbation.
std::map<std::string, Scalar> saydResiduals(const SaydModule& M) {
    std::map<std::string, Scalar> out;
    const Presentation& p = M.hopf().alg();
    Ring R = p.ring();
    int dim = M.dim();
    auto emit = [&](const std::string& key, const Scalar& c) {
        if (!c.isZero()) out.emplace(key, c);
    };
    auto wordMatrix = [&](const Word& w) {
        SparseMat m = SparseMat::identity(R, dim);
        if (M.actsOnLeft()) {
            for (char ch : w) m = m * M.actionMatrix(static_cast<unsigned char>(ch));
        } else {
            for (char ch : w) m = M.actionMatrix(static_cast<unsigned char>(ch)) * m;
        }
        return m;
    };
    int ruleIdx = 0;
    for (const Rule& r : p.rules()) {
        SparseMat diff = wordMatrix(r.lhs);
        for (const auto& [w, c] : r.rhs) diff = diff - wordMatrix(w).scaled(c);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                emit("r" + std::to_string(ruleIdx) + ":" + std::to_string(i) + ":" +
                         std::to_string(j),
                     diff.get(i, j));
        ++ruleIdx;
    }
    const HopfAlgebra& H = M.hopf();
    for (size_t g = 0; g < p.generators().size(); ++g) {
        Word gw(1, static_cast<char>(g));
        TensorElement d3 = H.coproductIter(p.gen(static_cast<int>(g)), 3);
        for (int m = 0; m < dim; ++m) {
            CoactionTerms lhs = M.coactionOf(M.actWord(gw, unitVec(m, R)));
            CoactionTerms rhs;
            for (const auto& [t, c] : d3.terms()) {
                for (const auto& [key, d] : M.coaction(m)) {
                    AlgebraElement leg(&p);
                    switch (M.variance()) {
                        case Variance::RightLeft:
                            leg = H.antipodeWord(t[2]) * p.wordElement(key.first) *
                                  p.wordElement(t[0]);
                            break;
                        case Variance::LeftLeft:
                            leg = p.wordElement(t[2]) * p.wordElement(key.first) *
                                  H.antipodeWord(t[0]);
                            break;
                        case Variance::LeftRight:
                            leg = p.wordElement(t[2]) * p.wordElement(key.first) *
                                  H.antipodeWord(t[0]);
                            break;
                        case Variance::RightRight:
                            leg = H.antipodeWord(t[0]) * p.wordElement(key.first) *
                                  p.wordElement(t[2]);
                            break;
                    }
                    SparseVec mod = M.actWord(t[1], unitVec(key.second, R));
                    for (const auto& [u, cu] : leg.terms())
                        for (const auto& [i2, cv] : mod) addTo(rhs, u, i2, c * d * cu * cv);
                }
            }
            std::map<std::pair<Word, int>, Scalar> diff = lhs;
            for (const auto& [k, c] : rhs) addTo(diff, k.first, k.second, -c);
            for (const auto& [k, c] : diff)
                emit("a" + std::to_string(g) + ":" + std::to_string(m) + ":" +
                         p.wordStr(k.first) + ":" + std::to_string(k.second),
                     c);
        }
    }
    for (int m = 0; m < dim; ++m) {
        SparseVec s;
        for (const auto& [key, c] : M.coaction(m))
            sparseAxpy(s, c, M.actWord(key.first, unitVec(key.second, R)));
        sparseAxpy(s, Scalar::fromInt(R, -1), unitVec(m, R));
        for (const auto& [i, c] : s)
            emit("s" + std::to_string(m) + ":" + std::to_string(i), c);
    }
    return out;
}

} // namespace

std::vector<SaydModule> solveSayd2(std::shared_ptr<HopfAlgebra> H, Variance variance,
                                   int grouplikeDegreeCap) {
    std::vector<SaydModule> out;
    auto dim1 = solveSayd1(H, variance, grouplikeDegreeCap);
    Ring R = H->ring();
    size_t ngens = H->alg().generators().size();
    for (size_t a = 0; a < dim1.size(); ++a)
        for (size_t b = 0; b < dim1.size(); ++b) {
            const SaydModule &A = dim1[a], &B = dim1[b];
            auto build = [&](const std::vector<Scalar>& c) {
                SaydModule M(H, 2, variance);
                for (size_t g = 0; g < ngens; ++g) {
                    SparseMat m = SparseMat::zero(R, 2, 2);
                    m.set(0, 0, A.actionMatrix(static_cast<int>(g)).get(0, 0));
                    m.set(1, 1, B.actionMatrix(static_cast<int>(g)).get(0, 0));
                    m.set(0, 1, c[g]);
                    M.setActionMatrix(static_cast<int>(g), std::move(m));
                }
                CoactionTerms t0, t1;
                t0.emplace(std::make_pair(A.coaction(0).begin()->first.first, 0),
                           Scalar::one(R));
                t1.emplace(std::make_pair(B.coaction(0).begin()->first.first, 1),
                           Scalar::one(R));
                M.setCoaction(0, std::move(t0));
                M.setCoaction(1, std::move(t1));
                return M;
            };
            std::vector<Scalar> zero(ngens, Scalar::zero(R));
            SaydModule diag = build(zero);
            if (diag.check().empty() && a <= b) out.push_back(diag);
            // linear solve for off-diagonal parts: residuals are linear in c,
            // so columns come from unit perturbations minus the base
            auto base = saydResiduals(diag);
            std::vector<std::map<std::string, Scalar>> cols;
            std::map<std::string, int> rowOf;
            auto rowIdx = [&](const std::string& k) {
                auto it = rowOf.find(k);
                if (it == rowOf.end())
                    it = rowOf.emplace(k, static_cast<int>(rowOf.size())).first;
                return it->second;
            };
            for (const auto& [k, c] : base) rowIdx(k);
            for (size_t g = 0; g < ngens; ++g) {
                std::vector<Scalar> e = zero;
                e[g] = Scalar::one(R);
                auto rg = saydResiduals(build(e));
                for (const auto& [k, c] : base) {
                    auto it = rg.emplace(k, Scalar::zero(R)).first;
                    it->second = it->second - c;
                    if (it->second.isZero()) rg.erase(it);
                }
                for (const auto& [k, c] : rg) rowIdx(k);
                cols.push_back(std::move(rg));
            }
            SparseMat sys = SparseMat::zero(R, static_cast<int>(rowOf.size()),
                                            static_cast<int>(ngens));
            for (size_t g = 0; g < ngens; ++g)
                for (const auto& [k, c] : cols[g])
                    sys.set(rowOf.at(k), static_cast<int>(g), c);
            for (const SparseVec& k : kernelBasis(sys)) {
                std::vector<Scalar> c = zero;
                bool nontrivial = false;
                for (const auto& [g, cg] : k) {
                    c[g] = cg;
                    nontrivial = true;
                }
                if (!nontrivial) continue;
                SaydModule M = build(c);
                if (M.check().empty()) out.push_back(std::move(M));
            }
        }
    return out;
}

LieSaydModule randomLieSayd(std::mt19937& rng) {
    Ring R = Ring::rationals();
    std::uniform_int_distribution<int> small(-3, 3);
    int shape = static_cast<int>(rng() % 5);
    switch (shape) {
        case 0: {
            // abelian, diagonal action, zero coaction
            int d = 1 + static_cast<int>(rng() % 3);
            int n = 1 + static_cast<int>(rng() % 3);
            LieSaydModule M(LieAlgebra::abelian(R, d), n);
            for (int i = 0; i < d; ++i) {
                SparseMat A = SparseMat::zero(R, n, n);
                for (int j = 0; j < n; ++j) A.set(j, j, Scalar::fromInt(R, small(rng)));
                M.setActionMatrix(i, std::move(A));
            }
            return M;
        }
        case 1: {
            // abelian dim 1, zero action, nilpotent coaction
            int n = 2 + static_cast<int>(rng() % 2);
            LieSaydModule M(LieAlgebra::abelian(R, 1), n);
            SparseMat C = SparseMat::zero(R, n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) C.set(i, j, Scalar::fromInt(R, small(rng)));
            M.setCoactionMatrix(0, std::move(C));
            return M;
        }
        case 2: {
            // nonabelian 2-dim: A_X nilpotent, A_Y diagonal with gap 1
            LieSaydModule M(LieAlgebra::nonabelian2(R), 2);
            Scalar c = Scalar::fromInt(R, small(rng));
            long dlow = small(rng);
            SparseMat AX = SparseMat::zero(R, 2, 2);
            AX.set(0, 1, c);
            SparseMat AY = SparseMat::zero(R, 2, 2);
            // m[X,Y] = mX requires A_Y A_X - A_X A_Y = A_X
            AY.set(0, 0, Scalar::fromInt(R, dlow + 1));
            AY.set(1, 1, Scalar::fromInt(R, dlow));
            M.setActionMatrix(0, std::move(AX));
            M.setActionMatrix(1, std::move(AY));
            return M;
        }
        case 3: {
            // adjoint module of sl2, zero coaction
            LieAlgebra g = LieAlgebra::sl2(R);
            LieSaydModule M(g, 3);
            for (int k = 0; k < 3; ++k) {
                SparseMat A = SparseMat::zero(R, 3, 3);
                for (int j = 0; j < 3; ++j)
                    for (const auto& [i, c] : g.bracket[j][k]) A.set(i, j, c);
                M.setActionMatrix(k, std::move(A));
            }
            return M;
        }
        default: {
            // abelian dim 2: commuting pair A, aA + bI
            int n = 2 + static_cast<int>(rng() % 2);
            LieSaydModule M(LieAlgebra::abelian(R, 2), n);
            SparseMat A = SparseMat::zero(R, n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (rng() % 2 == 0) A.set(i, j, Scalar::fromInt(R, small(rng)));
            Scalar a = Scalar::fromInt(R, small(rng)), b = Scalar::fromInt(R, small(rng));
            SparseMat B = A.scaled(a) + SparseMat::identity(R, n).scaled(b);
            M.setActionMatrix(0, std::move(A));
            M.setActionMatrix(1, std::move(B));
            return M;
        }
    }
}

} // namespace hopfcyc

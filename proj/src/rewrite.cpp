#include "hopfcyc/rewrite.hpp"

#include "hopfcyc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace hopfcyc {

Presentation::Presentation(std::string name, Ring ring, std::vector<Generator> gens)
    : name_(std::move(name)), ring_(ring), gens_(std::move(gens)) {
    if (gens_.size() > 120) throw Error("too many generators");
}

int Presentation::generatorIndex(const std::string& name) const {
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return static_cast<int>(i);
    return -1;
}

int Presentation::degreeOf(const Word& w) const {
    int d = 0;
    for (char c : w) d += gens_[static_cast<unsigned char>(c)].degree;
    return d;
}

int Presentation::cmpWords(const Word& a, const Word& b) const {
    int da = degreeOf(a), db = degreeOf(b);
    if (da != db) return da < db ? -1 : 1;
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return a.compare(b) < 0 ? -1 : (a == b ? 0 : 1);
}

bool Presentation::withinCartanWindow(const Word& w) const {
    if (cartanWindow_ < 0) return true;
    std::vector<int> net(gens_.size(), 0);
    for (char c : w) {
        int i = static_cast<unsigned char>(c);
        int partner = gens_[i].inverseOf;
        if (partner < 0) {
            if (gens_[i].windowed) net[i] += 1;
            continue;
        }
        // count the pair's net exponent on the canonical member (smaller index)
        if (i < partner) net[i] += 1;
        else net[partner] -= 1;
    }
    for (int v : net)
        if (v > cartanWindow_ || v < -cartanWindow_) return false;
    return true;
}

void Presentation::addRule(const Word& lhs, std::map<Word, Scalar> rhs) {
    for (auto it = rhs.begin(); it != rhs.end();) {
        if (it->second.isZero()) it = rhs.erase(it);
        else {
            if (cmpWords(it->first, lhs) >= 0)
                throw Error("rule rhs term " + wordStr(it->first) +
                            " is not smaller than lhs " + wordStr(lhs));
            ++it;
        }
    }
    rules_.push_back(Rule{lhs, std::move(rhs)});
}

std::optional<std::pair<size_t, size_t>> Presentation::findRedex(const Word& w,
                                                                 bool rightmost) const {
    auto matchAt = [&](size_t pos) -> std::optional<size_t> {
        for (size_t r = 0; r < rules_.size(); ++r) {
            const Word& l = rules_[r].lhs;
            if (pos + l.size() <= w.size() && w.compare(pos, l.size(), l) == 0) return r;
        }
        return std::nullopt;
    };
    if (!rightmost) {
        for (size_t pos = 0; pos < w.size(); ++pos)
            if (auto r = matchAt(pos)) return std::make_pair(pos, *r);
    } else {
        for (size_t pos = w.size(); pos-- > 0;)
            if (auto r = matchAt(pos)) return std::make_pair(pos, *r);
    }
    return std::nullopt;
}

AlgebraElement Presentation::normalize(std::map<Word, Scalar> raw, bool rightmost) const {
    AlgebraElement out(this);
    std::vector<std::pair<Word, Scalar>> work(raw.begin(), raw.end());
    while (!work.empty()) {
        auto [w, c] = std::move(work.back());
        work.pop_back();
        if (c.isZero()) continue;
        auto redex = findRedex(w, rightmost);
        if (!redex) {
            if (truncationDegree_ >= 0 && degreeOf(w) > truncationDegree_) continue;
            if (!withinCartanWindow(w))
                throw DegreeOverflowError("Cartan window exceeded by normal word " + wordStr(w) +
                                          " in " + name_);
            out.addTermUnchecked(w, c);
            continue;
        }
        auto [pos, r] = *redex;
        const Rule& rule = rules_[r];
        Word pre = w.substr(0, pos);
        Word post = w.substr(pos + rule.lhs.size());
        for (const auto& [rw, rc] : rule.rhs)
            work.emplace_back(pre + rw + post, c * rc);
    }
    return out;
}

AlgebraElement Presentation::unit() const { return wordElement(Word()); }

AlgebraElement Presentation::gen(int i) const { return wordElement(Word(1, static_cast<char>(i))); }

AlgebraElement Presentation::gen(const std::string& name) const {
    int i = generatorIndex(name);
    if (i < 0) throw Error("no generator '" + name + "' in " + name_);
    return gen(i);
}

AlgebraElement Presentation::wordElement(const Word& w) const {
    return normalize({{w, Scalar::one(ring_)}});
}

AlgebraElement Presentation::zeroElement() const { return AlgebraElement(this); }

std::vector<std::string> Presentation::checkConfluence(int degreeBound) const {
    std::vector<std::string> report;
    auto resolve = [&](const Word& w, size_t posA, size_t ruleA, size_t posB, size_t ruleB) {
        if (degreeOf(w) > degreeBound) return;
        auto applyAt = [&](size_t pos, size_t r) {
            std::map<Word, Scalar> terms;
            const Rule& rule = rules_[r];
            Word pre = w.substr(0, pos);
            Word post = w.substr(pos + rule.lhs.size());
            for (const auto& [rw, rc] : rule.rhs) {
                auto [it, fresh] = terms.emplace(pre + rw + post, rc);
                if (!fresh) it->second += rc;
            }
            return terms;
        };
        try {
            AlgebraElement a = normalize(applyAt(posA, ruleA));
            AlgebraElement b = normalize(applyAt(posB, ruleB));
            if (!(a == b))
                report.push_back("overlap " + wordStr(w) + " unresolved: " + a.str() +
                                 " != " + b.str());
        } catch (const DegreeOverflowError&) {
            // resolution escapes the configured window; not a confluence failure
        }
    };
    for (size_t i = 0; i < rules_.size(); ++i) {
        for (size_t j = 0; j < rules_.size(); ++j) {
            const Word& li = rules_[i].lhs;
            const Word& lj = rules_[j].lhs;
            // suffix of li == prefix of lj (proper overlap)
            size_t maxk = std::min(li.size(), lj.size()) - 1;
            for (size_t k = 1; k <= maxk; ++k) {
                if (li.compare(li.size() - k, k, lj, 0, k) != 0) continue;
                Word w = li + lj.substr(k);
                resolve(w, 0, i, li.size() - k, j);
            }
            // lj strictly inside li
            if (i != j && lj.size() < li.size()) {
                for (size_t pos = 0; pos + lj.size() <= li.size(); ++pos)
                    if (li.compare(pos, lj.size(), lj) == 0) resolve(li, 0, i, pos, j);
            }
        }
    }
    return report;
}

std::vector<Word> Presentation::basisUpTo(int d) const {
    constexpr size_t kSafetyCap = 200000;
    std::vector<Word> out;
    std::vector<Word> frontier{Word()};
    auto reducible = [&](const Word& w) {
        for (const Rule& r : rules_)
            if (w.size() >= r.lhs.size() &&
                w.compare(w.size() - r.lhs.size(), r.lhs.size(), r.lhs) == 0)
                return true;
        return false;
    };
    while (!frontier.empty()) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
            out.push_back(w);
            if (out.size() > kSafetyCap)
                throw DegreeOverflowError("basis enumeration exceeds cap in " + name_ +
                                          " (unbounded degree-0 letters?)");
            for (size_t g = 0; g < gens_.size(); ++g) {
                Word ext = w + static_cast<char>(g);
                if (degreeOf(ext) > d) continue;
                if (reducible(ext)) continue;
                if (!withinCartanWindow(ext)) continue;
                next.push_back(ext);
            }
            if (next.size() > kSafetyCap)
                throw DegreeOverflowError("basis enumeration exceeds cap in " + name_);
        }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end(),
              [&](const Word& a, const Word& b) { return cmpWords(a, b) < 0; });
    return out;
}

std::string Presentation::wordStr(const Word& w) const {
    if (w.empty()) return "1";
    std::ostringstream s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s << "*";
        s << gens_[static_cast<unsigned char>(w[i])].name;
    }
    return s.str();
}

// ---------------------------------------------------------------------------

Scalar AlgebraElement::coeff(const Word& w) const {
    auto it = terms_.find(w);
    if (it != terms_.end()) return it->second;
    return alg_ ? Scalar::zero(alg_->ring()) : Scalar();
}

int AlgebraElement::maxDegree() const {
    int d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, alg_->degreeOf(w));
    return d;
}

void AlgebraElement::addTermUnchecked(const Word& w, const Scalar& c) {
    auto [it, fresh] = terms_.emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.isZero()) terms_.erase(it);
    }
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    if (!alg_) return o;
    if (!o.alg_) return *this;
    if (alg_ != o.alg_) throw SlotMismatchError("adding elements of different algebras");
    AlgebraElement r = *this;
    for (const auto& [w, c] : o.terms_) r.addTermUnchecked(w, c);
    return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const { return *this + (-o); }

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement r = *this;
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
    if (!alg_ || !o.alg_) return AlgebraElement(alg_ ? alg_ : o.alg_);
    if (alg_ != o.alg_) throw SlotMismatchError("multiplying elements of different algebras");
    std::map<Word, Scalar> raw;
    for (const auto& [w1, c1] : terms_)
        for (const auto& [w2, c2] : o.terms_) {
            Scalar c = c1 * c2;
            auto [it, fresh] = raw.emplace(w1 + w2, c);
            if (!fresh) it->second += c;
        }
    return alg_->normalize(std::move(raw));
}

AlgebraElement AlgebraElement::scaled(const Scalar& c) const {
    AlgebraElement r(alg_);
    if (c.isZero()) return r;
    for (const auto& [w, x] : terms_) {
        Scalar y = x * c;
        if (!y.isZero()) r.terms_.emplace(w, y);
    }
    return r;
}

bool AlgebraElement::operator==(const AlgebraElement& o) const {
    if (alg_ && o.alg_ && alg_ != o.alg_)
        throw SlotMismatchError("comparing elements of different algebras");
    return terms_ == o.terms_;
}

std::string AlgebraElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream s;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) s << " + ";
        first = false;
        s << "(" << c.str() << ")";
        if (!w.empty()) s << "*" << alg_->wordStr(w);
    }
    return s.str();
}

// ---------------------------------------------------------------------------

TensorElement TensorElement::tensorOf(const std::vector<AlgebraElement>& factors) {
    std::vector<const Presentation*> slots;
    slots.reserve(factors.size());
    for (const auto& f : factors) slots.push_back(f.algebra());
    TensorElement out(slots);
    // outer-product expansion
    std::vector<std::pair<WordTuple, Scalar>> acc;
    Ring ring = factors.empty() ? Ring::rationals() : factors[0].algebra()->ring();
    acc.emplace_back(WordTuple{}, Scalar::one(ring));
    for (const auto& f : factors) {
        std::vector<std::pair<WordTuple, Scalar>> next;
        for (const auto& [tuple, c] : acc)
            for (const auto& [w, fc] : f.terms()) {
                WordTuple t = tuple;
                t.push_back(w);
                next.emplace_back(std::move(t), c * fc);
            }
        acc = std::move(next);
    }
    for (auto& [t, c] : acc)
        if (t.size() == slots.size()) out.addTerm(t, c);
    return out;
}

Ring TensorElement::ring() const {
    if (slots_.empty()) throw SlotMismatchError("empty tensor has no ring");
    return slots_[0]->ring();
}

void TensorElement::checkCompatible(const TensorElement& o) const {
    if (slots_ != o.slots_) throw SlotMismatchError("tensor slot mismatch");
}

void TensorElement::addTerm(const WordTuple& words, const Scalar& c) {
    if (c.isZero()) return;
    auto [it, fresh] = terms_.emplace(words, c);
    if (!fresh) {
        it->second += c;
        if (it->second.isZero()) terms_.erase(it);
    }
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
    if (slots_.empty() && terms_.empty()) return o;
    if (o.slots_.empty() && o.terms_.empty()) return *this;
    checkCompatible(o);
    TensorElement r = *this;
    for (const auto& [t, c] : o.terms_) r.addTerm(t, c);
    return r;
}

TensorElement TensorElement::operator-(const TensorElement& o) const {
    return *this + o.scaled(Scalar::fromInt(o.ring(), -1));
}

TensorElement TensorElement::scaled(const Scalar& c) const {
    TensorElement r(slots_);
    if (c.isZero()) return r;
    for (const auto& [t, x] : terms_) {
        Scalar y = x * c;
        if (!y.isZero()) r.terms_.emplace(t, y);
    }
    return r;
}

TensorElement TensorElement::operator*(const TensorElement& o) const {
    checkCompatible(o);
    TensorElement r(slots_);
    for (const auto& [t1, c1] : terms_)
        for (const auto& [t2, c2] : o.terms_) {
            // multiply slotwise, then expand the per-slot normal forms
            std::vector<AlgebraElement> factors;
            factors.reserve(slots_.size());
            for (size_t i = 0; i < slots_.size(); ++i)
                factors.push_back(slots_[i]->normalize({{t1[i] + t2[i], Scalar::one(ring())}}));
            TensorElement part = tensorOf(factors).scaled(c1 * c2);
            r = r + part;
        }
    return r;
}

bool TensorElement::operator==(const TensorElement& o) const {
    if (!slots_.empty() && !o.slots_.empty()) checkCompatible(o);
    return terms_ == o.terms_;
}

TensorElement TensorElement::mapSlot(size_t i,
                                     const std::function<AlgebraElement(const Word&)>& f) const {
    TensorElement r;
    bool slotsSet = false;
    for (const auto& [t, c] : terms_) {
        AlgebraElement img = f(t[i]);
        if (!slotsSet) {
            std::vector<const Presentation*> slots = slots_;
            slots[i] = img.algebra();
            r = TensorElement(slots);
            slotsSet = true;
        }
        for (const auto& [w, fc] : img.terms()) {
            WordTuple nt = t;
            nt[i] = w;
            r.addTerm(nt, c * fc);
        }
    }
    if (!slotsSet) {
        // empty element: keep old slots (caller typically only reads terms)
        r = TensorElement(slots_);
    }
    return r;
}

TensorElement TensorElement::spliceSlot(size_t i,
                                        const std::function<TensorElement(const Word&)>& f) const {
    TensorElement r;
    bool slotsSet = false;
    for (const auto& [t, c] : terms_) {
        TensorElement img = f(t[i]);
        if (!slotsSet) {
            std::vector<const Presentation*> slots;
            slots.insert(slots.end(), slots_.begin(), slots_.begin() + i);
            slots.insert(slots.end(), img.slots().begin(), img.slots().end());
            slots.insert(slots.end(), slots_.begin() + i + 1, slots_.end());
            r = TensorElement(slots);
            slotsSet = true;
        }
        for (const auto& [iw, ic] : img.terms()) {
            WordTuple nt;
            nt.insert(nt.end(), t.begin(), t.begin() + i);
            nt.insert(nt.end(), iw.begin(), iw.end());
            nt.insert(nt.end(), t.begin() + i + 1, t.end());
            r.addTerm(nt, c * ic);
        }
    }
    if (!slotsSet) r = TensorElement(slots_);
    return r;
}

TensorElement TensorElement::contractSlot(size_t i,
                                          const std::function<Scalar(const Word&)>& f) const {
    std::vector<const Presentation*> slots;
    slots.insert(slots.end(), slots_.begin(), slots_.begin() + i);
    slots.insert(slots.end(), slots_.begin() + i + 1, slots_.end());
    TensorElement r(slots);
    for (const auto& [t, c] : terms_) {
        Scalar fc = f(t[i]);
        if (fc.isZero()) continue;
        WordTuple nt;
        nt.insert(nt.end(), t.begin(), t.begin() + i);
        nt.insert(nt.end(), t.begin() + i + 1, t.end());
        r.addTerm(nt, c * fc);
    }
    return r;
}

TensorElement TensorElement::permuted(const std::vector<size_t>& perm) const {
    std::vector<const Presentation*> slots(perm.size());
    for (size_t j = 0; j < perm.size(); ++j) slots[j] = slots_[perm[j]];
    TensorElement r(slots);
    for (const auto& [t, c] : terms_) {
        WordTuple nt(perm.size());
        for (size_t j = 0; j < perm.size(); ++j) nt[j] = t[perm[j]];
        r.addTerm(nt, c);
    }
    return r;
}

std::string TensorElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream s;
    bool first = true;
    for (const auto& [t, c] : terms_) {
        if (!first) s << " + ";
        first = false;
        s << "(" << c.str() << ")*";
        for (size_t i = 0; i < t.size(); ++i) {
            if (i) s << "(x)";
            s << slots_[i]->wordStr(t[i]);
        }
    }
    return s.str();
}

} // namespace hopfcyc

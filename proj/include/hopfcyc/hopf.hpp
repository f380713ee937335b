#pragma once

#include "hopfcyc/linalg.hpp"
#include "hopfcyc/rewrite.hpp"

#include <memory>
#include <mutex>
#include <set>

namespace hopfcyc {

// Coordinate index over a finite list of normal words.
struct BasisIndex {
    std::vector<Word> words;
    std::map<Word, int> pos;

    BasisIndex() = default;
    explicit BasisIndex(std::vector<Word> ws);
    int size() const { return static_cast<int>(words.size()); }
    // Throws DegreeOverflowError if the word is not in the index.
    int indexOf(const Word& w) const;
    SparseVec toVec(const AlgebraElement& x) const;
    AlgebraElement toElement(const Presentation* p, const SparseVec& v) const;
};

// A presented algebra together with coproduct, counit, antipode and inverse
// antipode, each given on generators and extended (anti)multiplicatively.
class HopfAlgebra {
public:
    explicit HopfAlgebra(std::shared_ptr<Presentation> alg) : alg_(std::move(alg)) {
        size_t n = alg_->generators().size();
        cop_.resize(n);
        cou_.resize(n, Scalar::zero(alg_->ring()));
        anti_.resize(n);
        antiInv_.resize(n);
    }

    const Presentation& alg() const { return *alg_; }
    Presentation* algPtr() const { return alg_.get(); }
    std::shared_ptr<Presentation> shared() const { return alg_; }
    const Ring& ring() const { return alg_->ring(); }

    void setGeneratorStructure(int gen, TensorElement coproduct, Scalar counit,
                               AlgebraElement antipode, AlgebraElement antipodeInv);

    TensorElement coproductWord(const Word& w) const;
    TensorElement coproduct(const AlgebraElement& x) const;
    // Iterated coproduct with the given number of output slots (>= 1).
    TensorElement coproductIter(const AlgebraElement& x, int slots) const;
    Scalar counitWord(const Word& w) const;
    Scalar counit(const AlgebraElement& x) const;
    AlgebraElement antipodeWord(const Word& w) const;
    AlgebraElement antipode(const AlgebraElement& x) const;
    AlgebraElement antipodeInvWord(const Word& w) const;
    AlgebraElement antipodeInv(const AlgebraElement& x) const;

    // Checks coassociativity, counit, antipode, inverse-antipode and
    // (anti)homomorphism axioms on a spanning set of normal words up to the
    // degree bound. Returns human-readable descriptions of failures.
    std::vector<std::string> verifyHopfAxioms(int degreeBound) const;
    bool isCommutative(int degreeBound) const;
    bool isCocommutative(int degreeBound) const;

private:
    AlgebraElement applyAnti(const std::vector<AlgebraElement>& table, const Word& w) const;

    std::shared_ptr<Presentation> alg_;
    std::vector<TensorElement> cop_;
    std::vector<Scalar> cou_;
    std::vector<AlgebraElement> anti_;
    std::vector<AlgebraElement> antiInv_;
    mutable std::map<Word, TensorElement> copCache_;
    mutable std::mutex cacheMu_;
};

// h = 0 limit of a Hopf algebra presented over Q[h]/(h^N); result lives over Q.
std::shared_ptr<HopfAlgebra> semiclassicalLimit(const HopfAlgebra& H);

// C = H / H K^+ for a sub-Hopf-algebra K spanned by a subset of the generators,
// realized on the normal-word basis up to a degree cap. Left H-module
// coalgebra structure on cosets.
class QuotientCoalgebra {
public:
    QuotientCoalgebra(const HopfAlgebra* H, std::vector<int> subGens, int degreeCap);

    const HopfAlgebra& hopf() const { return *H_; }
    const std::vector<int>& subGenerators() const { return subGens_; }
    int degreeCap() const { return cap_; }
    int dim() const { return quot_.dim(); }
    const BasisIndex& ambient() const { return basis_; }
    // Normal word representing coset basis element i.
    const Word& cosetWord(int i) const;
    AlgebraElement representative(int i) const;
    // Coset coordinates of an algebra element.
    SparseVec reduce(const AlgebraElement& x) const;
    // h . c_i in coset coordinates.
    SparseVec actLeft(const AlgebraElement& h, int i) const;
    // Coset coproduct Delta_C(c_i) in C (x) C coordinates.
    std::map<std::pair<int, int>, Scalar> coproductCoset(int i) const;
    // Left coaction C -> H (x) C induced by Delta on a representative.
    std::map<std::pair<Word, int>, Scalar> coactionCoset(int i) const;
    Scalar counitCoset(int i) const;

private:
    const HopfAlgebra* H_;
    std::vector<int> subGens_;
    int cap_;
    BasisIndex basis_;
    QuotientSpace quot_;
};

namespace catalog {

// Names of all built-in Hopf algebras.
std::vector<std::string> names();
// Fresh instance by name; seriesOrder applies to the h-adic entries.
// Recognizes "group_c<n>" for any n >= 1.
std::shared_ptr<HopfAlgebra> get(const std::string& name, int seriesOrder = 4);

} // namespace catalog

} // namespace hopfcyc

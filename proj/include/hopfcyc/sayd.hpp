#pragma once

#include "hopfcyc/hopf.hpp"

#include <functional>
#include <random>

namespace hopfcyc {

enum class Variance { RightLeft, LeftLeft, LeftRight, RightRight };

std::string varianceName(Variance v);

// H-leg (normal word) x module basis index -> coefficient. For left coactions
// the word is m(-1); for right coactions it is m(1).
using CoactionTerms = std::map<std::pair<Word, int>, Scalar>;

// Finite-dimensional based module-comodule over a Hopf algebra, with the
// anti-Yetter-Drinfeld compatibility and stability checkable per variance.
class SaydModule {
public:
    SaydModule(std::shared_ptr<HopfAlgebra> H, int dim, Variance variance);

    const HopfAlgebra& hopf() const { return *H_; }
    std::shared_ptr<HopfAlgebra> hopfShared() const { return H_; }
    int dim() const { return dim_; }
    Variance variance() const { return var_; }
    const Ring& ring() const { return H_->ring(); }

    void setActionMatrix(int gen, SparseMat m); // image of the generator's action
    void setCoaction(int basis, CoactionTerms terms);
    const SparseMat& actionMatrix(int gen) const { return act_.at(gen); }
    const CoactionTerms& coaction(int basis) const { return coact_.at(basis); }

    // Action of an algebra element (composition of generator matrices; order
    // depends on the side of the action).
    SparseVec act(const AlgebraElement& h, const SparseVec& v) const;
    SparseVec actWord(const Word& w, const SparseVec& v) const;
    CoactionTerms coactionOf(const SparseVec& v) const;

    bool actsOnLeft() const { return var_ == Variance::LeftLeft || var_ == Variance::LeftRight; }
    bool coactsOnLeft() const { return var_ == Variance::RightLeft || var_ == Variance::LeftLeft; }

    // Empty iff module, comodule, AYD and stability axioms all hold.
    std::vector<std::string> check() const;

    std::string describe() const;

private:
    std::shared_ptr<HopfAlgebra> H_;
    int dim_;
    Variance var_;
    std::vector<SparseMat> act_;
    std::vector<CoactionTerms> coact_;
};

// Functions H -> M represented by their values on a finite family of normal
// words; evaluating outside the family is a degree escape (hard error).
using FiniteMap = std::map<Word, SparseVec>;

// H-module with a contra-action alpha: Hom(H, M) -> M, represented by the
// matrices A_w with alpha(f) = sum_w A_w f(w) over the stored word family.
class ContraModule {
public:
    ContraModule(std::shared_ptr<HopfAlgebra> H, int dim, int degreeBound);

    const HopfAlgebra& hopf() const { return *H_; }
    std::shared_ptr<HopfAlgebra> hopfShared() const { return H_; }
    int dim() const { return dim_; }
    int degreeBound() const { return bound_; }
    const Ring& ring() const { return H_->ring(); }

    void setActionMatrix(int gen, SparseMat m); // left H-action on M
    void setAlphaMatrix(const Word& w, SparseMat m);
    const SparseMat& actionMatrix(int gen) const { return act_.at(gen); }
    SparseMat alphaMatrix(const Word& w) const; // zero if unset
    const std::map<Word, SparseMat>& alphaSupport() const { return alpha_; }

    SparseVec actWord(const Word& w, const SparseVec& v) const;
    SparseVec act(const AlgebraElement& h, const SparseVec& v) const;
    // alpha(f); any f-support outside the stored family raises
    // DegreeOverflowError.
    SparseVec alpha(const FiniteMap& f) const;

    // Contramodule axioms: alpha(r_mu) = mu and the generator compatibility.
    std::vector<std::string> check() const;

private:
    std::shared_ptr<HopfAlgebra> H_;
    int dim_;
    int bound_;
    std::vector<SparseMat> act_;
    std::map<Word, SparseMat> alpha_;
};

// M^dual of a right-left SAYD module: left action (h.f)(m) = f(m.h) and
// contra-action alpha(f)(m) = f(m(-1))(m(0)).
ContraModule dualize(const SaydModule& M, int degreeBound);

// Finite-dimensional Lie algebra with based bracket.
struct LieAlgebra {
    Ring ring = Ring::rationals();
    int dim = 0;
    std::vector<std::string> names;
    // bracket[i][j] = [xi_i, xi_j] as a vector
    std::vector<std::vector<SparseVec>> bracket;

    static LieAlgebra abelian(Ring ring, int n);
    // [X, Y] = X
    static LieAlgebra nonabelian2(Ring ring);
    static LieAlgebra sl2(Ring ring);
    SparseVec bracketOf(const SparseVec& a, const SparseVec& b) const;
    std::vector<std::string> checkJacobi() const;
};

// Right g-module with left Lambda(g)-coaction nabla(m) = m[-1] (x) m[0].
class LieSaydModule {
public:
    LieSaydModule(LieAlgebra g, int dim);

    const LieAlgebra& lie() const { return g_; }
    int dim() const { return dim_; }
    const Ring& ring() const { return g_.ring; }

    void setActionMatrix(int i, SparseMat m); // m -> m . xi_i
    // coaction component in the xi_i leg
    void setCoactionMatrix(int i, SparseMat m);
    const SparseMat& actionMatrix(int i) const { return act_.at(i); }
    const SparseMat& coactionMatrix(int i) const { return coact_.at(i); }

    SparseVec actXi(int i, const SparseVec& v) const { return act_.at(i).apply(v); }
    // m . theta^i = theta^i(m[-1]) m[0]
    SparseVec actTheta(int i, const SparseVec& v) const { return coact_.at(i).apply(v); }

    std::vector<std::string> checkSayd() const;         // axioms (i)-(iv)
    std::vector<std::string> checkUnimodularStable() const;
    bool locallyConilpotent() const;

private:
    LieAlgebra g_;
    int dim_;
    std::vector<SparseMat> act_;
    std::vector<SparseMat> coact_;
};

// Dual module with (f . xi)(m) = -f(m xi) and (f . theta)(m) = f(m theta);
// unimodular stable whenever the input is a stable AYD module.
LieSaydModule lieDualUnimodular(const LieSaydModule& M);

// Enumerates one-dimensional SAYD modules (character action, grouplike
// coaction) over H for the given variance; deterministic order.
std::vector<SaydModule> solveSayd1(std::shared_ptr<HopfAlgebra> H, Variance variance,
                                   int grouplikeDegreeCap = 2);
// Two-dimensional solutions with diagonal grouplike coaction and triangular
// action: diagonal pairs of 1-dim solutions plus linear off-diagonal parts.
std::vector<SaydModule> solveSayd2(std::shared_ptr<HopfAlgebra> H, Variance variance,
                                   int grouplikeDegreeCap = 2);

// Deterministic pseudo-random stable AYD module over a Lie algebra of
// dimension <= 3; always passes checkSayd.
LieSaydModule randomLieSayd(std::mt19937& rng);

} // namespace hopfcyc

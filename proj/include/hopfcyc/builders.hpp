#pragma once

#include "hopfcyc/cyclic.hpp"
#include "hopfcyc/sayd.hpp"

#include <functional>
#include <memory>
#include <optional>

namespace hopfcyc {

// Finite-dimensional unital algebra realized on an explicit basis, carrying a
// left H-action (module algebra) and/or an H-coaction (comodule algebra).
struct CoefficientAlgebra {
    std::shared_ptr<HopfAlgebra> H;
    int dim = 0;
    std::vector<std::string> labels;
    // mult[i][j] = e_i e_j; nullopt marks products that escape a truncation
    // window (capped builds never touch them).
    std::vector<std::vector<std::optional<SparseVec>>> mult;
    SparseVec unit;
    // Left action matrices per H-generator; empty when the algebra is used on
    // the comodule side only.
    std::vector<SparseMat> action;
    // Coaction e_i -> (word, index) terms; the word is the H-leg on the side
    // given by coactsLeft. Empty when unused.
    std::vector<CoactionTerms> coaction;
    bool coactsLeft = false;
    // Formal degree of each basis element, used when capping tensor tuples;
    // all-zero for algebras that are realized in full.
    std::vector<int> degrees;

    const Ring& ring() const { return H->ring(); }
    SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
    SparseVec actWord(const Word& w, const SparseVec& v) const;
    SparseVec act(const AlgebraElement& h, const SparseVec& v) const;
    CoactionTerms coactionOf(const SparseVec& v) const;
    // Unit/associativity on stored products, action axioms against the
    // presentation's relations, and multiplicativity of action or coaction.
    std::vector<std::string> checkModuleAlgebra() const;
    std::vector<std::string> checkComoduleAlgebra() const;
};

// A = H with the left adjoint action h (x) a -> h1 a S(h2); requires the
// degree-capped basis to be multiplicatively closed.
CoefficientAlgebra adjointModuleAlgebra(std::shared_ptr<HopfAlgebra> H, int degreeCap);
// Truncated polynomial plane x^a y^b (a + b <= cap, higher products zero) with
// the standard (q-)derivation action of u_sl2 / uq_sl2.
CoefficientAlgebra planeModuleAlgebra(std::shared_ptr<HopfAlgebra> H, int cap);
// A = H on its degree-capped basis with the coproduct as coaction; products
// and coaction legs beyond the cap are marked unavailable.
CoefficientAlgebra regularComoduleAlgebra(std::shared_ptr<HopfAlgebra> H, int degreeCap,
                                          bool leftCoaction);
// A = k[x]/(x^p) with coaction x^j -> sigma^j (x) x^j for a grouplike normal
// word sigma (left or right leg).
CoefficientAlgebra grouplikeComoduleAlgebra(std::shared_ptr<HopfAlgebra> H, const Word& sigma,
                                            int p, bool leftCoaction);
// Quantum line A = k[y]/(y^p): the nilpotent generator acts as the twisted
// derivative y^k -> [k] y^{k-1} and the grouplike generator by the matching
// root-of-unity (or sign) character.
CoefficientAlgebra quantumLineModuleAlgebra(std::shared_ptr<HopfAlgebra> H, int p);

enum class ComplexKind {
    ModuleAlgebraCocyclic,
    ModuleCoalgebraCocyclic,
    RelativeCocyclic,
    ComoduleAlgebraCyclic,
    ModuleAlgebraContra,
    ModuleCoalgebraContra,
    RelativeContra,
    ComoduleAlgebraContra,
    OGComoduleCyclic,
    OGComoduleCocyclic,
    LieCyclicBicomplex,
    LieCocyclicBicomplex,
    RelativeLie,
    QCoinvariantCyclic,
    QCoinvariantCocyclic,
};

std::string complexKindName(ComplexKind k);
ComplexKind parseComplexKind(const std::string& name);

struct ComplexSpec {
    ComplexKind kind = ComplexKind::ModuleCoalgebraCocyclic;
    std::shared_ptr<HopfAlgebra> H;
    const SaydModule* M = nullptr;        // module coefficients
    const ContraModule* CM = nullptr;     // contra coefficients (dualized M if null)
    const CoefficientAlgebra* A = nullptr; // module/comodule algebra input
    std::vector<int> subGenerators;       // generators of K for coalgebra slots C = H/HK^+
    const LieSaydModule* LM = nullptr;    // Lie coefficients
    std::vector<int> lieSub;              // basis indices spanning the Lie subalgebra
    int degreeCap = 2;     // top simplicial degree realized
    int tensorCap = 2;     // total slot-degree cap per chain space
    int balancingCap = 2;  // degree cap for the spanning set in (x)_H / Hom_H constraints
};

// Per-degree basis bookkeeping of a realized chain space: tuples
// (coefficient index, slot basis indices) spanning the ambient space, plus the
// quotient/subspace structure cutting out the realized space.
struct ChainBasis {
    enum class Realization { Free, Quotient, Subspace };
    Realization realization = Realization::Free;
    std::vector<std::pair<int, std::vector<int>>> tuples;
    std::map<std::pair<int, std::vector<int>>, int> pos;
    QuotientSpace quot;
    SubSpace sub;
    int dim = 0;

    int ambientDim() const { return static_cast<int>(tuples.size()); }
    int indexOf(int m, const std::vector<int>& slots) const; // -1 if absent
    // Realized coordinates of an ambient vector / ambient lift of a realized
    // basis vector.
    SparseVec reduce(const SparseVec& ambient) const;
    SparseVec lift(const Ring& ring, int i) const;
};

struct BuiltComplex {
    ComplexKind kind = ComplexKind::ModuleCoalgebraCocyclic;
    bool isBicomplex = false;
    ParaCyclicObject object;
    Bicomplex bicomplex;
    std::vector<int> dims;
    std::vector<ChainBasis> bases;
    std::vector<std::string> notes;
};

// Realizes the chain spaces and all structure operators of the requested
// complex; cyclic identity verification is the caller's acceptance step.
BuiltComplex build(const ComplexSpec& spec);

// Homology-side partner of the module-algebra complexes: coefficients (x)_H
// A^{(x) n+1} with the standard cyclic structure. Reads H, M, A and the caps
// from the spec (the kind field is ignored).
BuiltComplex moduleAlgebraCyclicPartner(const ComplexSpec& spec);

// Degreewise transport matrix between two realized complexes whose ambient
// coordinates use the same (coefficient, slots) labels; entries are obtained
// by matching labels and reducing into the target realization.
SparseMat reindexTransport(const BuiltComplex& from, const BuiltComplex& to, int n);

// Evaluation pairing matrix at degree n between a functional-side complex and
// its partner built from the same slot data: rows are functional-side basis
// vectors, columns partner basis vectors.
SparseMat dualityPairing(const BuiltComplex& functionalSide, const BuiltComplex& moduleSide,
                         int n);

// Membership of every emitted basis vector of a cotensor-realized degree in
// the kernel of the coaction difference; empty iff all equations hold.
std::vector<std::string> checkCotensorMembership(const BuiltComplex& built,
                                                 const ComplexSpec& spec);

struct RelativeTransport {
    BuiltComplex absolute;  // coefficients (x)_H C^{(x) n+1}
    BuiltComplex relative;  // coefficients (x)_K C^{(x) n}
    std::vector<SparseMat> forward;  // absolute -> relative per degree
    std::vector<SparseMat> backward;
    std::vector<std::string> issues; // empty iff both composites are identities
};

// Builds the absolute module-coalgebra object on C = H/HK^+ together with the
// relative object, and verifies the transport maps are mutually inverse at
// every realized degree.
RelativeTransport relativeFromQuotient(std::shared_ptr<HopfAlgebra> H,
                                       const std::vector<int>& subGens, const SaydModule& M,
                                       int degreeCap, int tensorCap, int balancingCap);
RelativeTransport relativeFromQuotientContra(std::shared_ptr<HopfAlgebra> H,
                                             const std::vector<int>& subGens,
                                             const SaydModule& M, const ContraModule& CM,
                                             int degreeCap, int tensorCap, int balancingCap);

struct CoinvariantAlgebra {
    CoefficientAlgebra algebra;        // with the induced left coaction
    std::vector<SparseVec> inclusion;  // basis vectors inside the capped basis of O
    std::vector<std::string> issues;   // closure / coaction membership failures
};

// Joint kernel of (ell |> .) - eps(ell) id on the degree-capped basis of O for
// the given subalgebra generator actions, with the induced comodule-algebra
// structure.
CoinvariantAlgebra coinvariantSubalgebra(std::shared_ptr<HopfAlgebra> O,
                                         const std::vector<SparseMat>& subActions,
                                         const std::vector<Scalar>& subCounits, int degreeCap);

using PairingFn = std::function<Scalar(const Word& enveloping, const Word& function)>;

// Transfers a right-left coefficient module over an enveloping-type Hopf
// algebra to a left-right module of its dual over the function algebra O:
// the action of O is read off the coaction through the pairing, and the
// coaction over O solves the graded pairing system against the action
// matrices. Throws DegeneratePairingError when a needed block is singular.
SaydModule transferCoefficients(const SaydModule& M, std::shared_ptr<HopfAlgebra> O,
                                const PairingFn& pairing, int degreeCap);

} // namespace hopfcyc

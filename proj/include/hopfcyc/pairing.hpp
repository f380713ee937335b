#pragma once

#include "hopfcyc/builders.hpp"

#include <mutex>

namespace hopfcyc {

// Bilinear Hopf pairing <.,.> : left (x) right -> k, determined by values on
// generator pairs and extended through
//   <1,a> = eps(a), <a,1> = eps(a),
//   <a,bc> = <a1,b><a2,c>,  <ab,c> = <a,c1><b,c2>.
// Evaluation is defined on normal words and extended bilinearly; generator
// pairs absent from the table pair to zero.
class HopfPairing {
public:
    HopfPairing(std::shared_ptr<HopfAlgebra> left, std::shared_ptr<HopfAlgebra> right,
                int degreeCap = 24);
    HopfPairing(const HopfPairing& o);
    HopfPairing& operator=(const HopfPairing& o);

    const HopfAlgebra& left() const { return *left_; }
    const HopfAlgebra& right() const { return *right_; }
    const Ring& ring() const { return left_->ring(); }

    void setGeneratorValue(int leftGen, int rightGen, Scalar v);

    Scalar evalWords(const Word& u, const Word& v) const;
    Scalar eval(const AlgebraElement& x, const AlgebraElement& y) const;

    // Induced left action a |> phi = phi1 <a, phi2> on the right algebra.
    AlgebraElement act(const AlgebraElement& a, const AlgebraElement& phi) const;
    // Matrix of a |> . on the right algebra's basis up to the degree cap.
    SparseMat actionMatrix(const AlgebraElement& a, int degreeCap) const;

    // Word-level adapter for coefficient transfer.
    PairingFn fn() const;

private:
    Scalar evalUncached(const Word& u, const Word& v) const;

    std::shared_ptr<HopfAlgebra> left_;
    std::shared_ptr<HopfAlgebra> right_;
    int cap_;
    std::map<std::pair<int, int>, Scalar> table_;
    mutable std::map<std::pair<Word, Word>, Scalar> cache_;
    mutable std::mutex mu_;
};

// The braid-group-invariant form on the Borel halves of a quantized
// enveloping algebra: <K_i,K_j> = q^{-a_ij/2}, <E_i,F_j> = d_ij/(q_j^-1-q_j),
// mixed generator pairs vanish. Realized on the whole algebra with zero table
// entries outside b+ (x) b-.
HopfPairing borelForm(std::shared_ptr<HopfAlgebra> Uq);

// Full quantum Killing form on U_q(g) (x) U_q(g): words split along the PBW
// decomposition U = n- (x) torus (x) n+ and
//   <a1 b1 c1, a2 b2 c2> = <b1,b2> <S(c1),a2> <c2,S(a1)>
// with the Borel form on each factor.
class KillingForm {
public:
    explicit KillingForm(std::shared_ptr<HopfAlgebra> Uq);

    Scalar evalWords(const Word& u, const Word& v) const;
    Scalar eval(const AlgebraElement& x, const AlgebraElement& y) const;

    const HopfPairing& borel() const { return borel_; }

private:
    std::shared_ptr<HopfAlgebra> U_;
    HopfPairing borel_;
    std::vector<int> role_; // -1 lowering, 0 torus, +1 raising per generator
};

// Built-in pairing between an enveloping-type entry and its function-algebra
// partner (uq_gl2/oq_gl2, uq_sl2/oq_sl2, uh_sl2/oh_sl2, u_sl2/o_sl2,
// u_abelian_1/o_ga, u_abelian_1/o_gm). Throws ManifestError for other pairs.
HopfPairing catalogPairing(std::shared_ptr<HopfAlgebra> U, std::shared_ptr<HopfAlgebra> O);

// Degreewise chain map between two realized complexes.
struct ChainMap {
    std::vector<SparseMat> mats; // target dim x source dim per degree
};

// All data of a quantum van Est instance: the relative cocyclic/contra
// complexes over U on C = U/UK^+, and the coinvariant-algebra cyclic/contra
// complexes over O, tied together by the pairing.
struct VanEstInstance {
    std::shared_ptr<HopfAlgebra> U, O;
    std::vector<int> subGens;
    HopfPairing pairing;
    SaydModule M;             // right-left over U
    SaydModule N;             // left-right over O, transferred through the pairing
    QuotientCoalgebra C;      // realized as in the coalgebra-side builders
    CoinvariantAlgebra B;     // joint coinvariants of the induced K-actions on O
    BuiltComplex hCocyclic;   // M (x)_U C^{(x) n+1}
    BuiltComplex hContra;     // its functional partner
    BuiltComplex oCyclic;     // N square B^{(x) n+1}
    BuiltComplex oContra;     // its functional partner
    std::vector<std::string> notes;
};

// Assembles the four complexes. hTensorCap bounds coset-word degrees on the
// U side; the O-side window cap is doubled to reach the dual monomials.
VanEstInstance makeVanEstInstance(std::shared_ptr<HopfAlgebra> U,
                                  std::shared_ptr<HopfAlgebra> O,
                                  const std::vector<int>& subGens, const HopfPairing& pairing,
                                  const SaydModule& M, int degreeCap, int hTensorCap);

// psi: M (x)_U C^{(x) n+1} -> functionals on N square B^{(x) n+1}, acting by
//   <psi(m (x) c~), a0 (x) ... (x) an> = m prod_i <a_i, c^i>.
// Throws DegeneratePairingError when a realized degree is not a bijection and
// MorphismFailureError (with operator and degree) when commutation fails.
ChainMap vanEstPsi(const VanEstInstance& inst);
// phi: N square B^{(x) n+1} -> functionals on M (x)_U C^{(x) n+1}, the mirror
// evaluation; verified against its own complexes' operators.
ChainMap vanEstPhi(const VanEstInstance& inst);

// Commutation audit of a degreewise map against every realized structure
// operator of two complexes with the same direction; empty iff a chain map.
std::vector<std::string> checkChainMap(const BuiltComplex& source, const BuiltComplex& target,
                                       const std::vector<SparseMat>& mats);

// Index of full coefficient-free tuples over an algebra window, the chain
// basis of the plain (co)cyclic complex of A.
struct TupleIndex {
    std::vector<std::vector<int>> tuples;
    std::map<std::vector<int>, int> pos;
};
TupleIndex plainTuples(const CoefficientAlgebra& A, int n);

// Diagonal Janus pairing: a degree-n cochain over the module coalgebra C = H
// and a degree-n functional cochain over the module algebra A produce the
// functional chi(a0,...,an) = f(m (x) (c^0 |> a0) ... (c^n |> an)) on plain
// A-tuples. Checks c |> (ab) = (c1 |> a)(c2 |> b) on basis elements first and
// throws NotEquivariantError on failure.
SparseVec janusPair(const ComplexSpec& coalgebraSpec, const BuiltComplex& coalgebraSide,
                    const BuiltComplex& algebraSide, const CoefficientAlgebra& A,
                    const SparseVec& cCochain, const SparseVec& aCochain, int n);

// Hochschild coboundary of a plain functional cochain on A-tuples.
SparseVec algebraCoboundary(const CoefficientAlgebra& A, const SparseVec& chi, int n);

} // namespace hopfcyc

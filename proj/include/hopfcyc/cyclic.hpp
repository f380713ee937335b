#pragma once

#include "hopfcyc/linalg.hpp"

#include <map>
#include <utility>
#include <vector>

namespace hopfcyc {

enum class Direction { Cyclic, Cocyclic };

std::string directionName(Direction d);

// Chain (shift = -1) or cochain (shift = +1) complex in degrees 0..top.
// d[n] maps degree n to degree n+shift; boundary maps leaving the realized
// range are zero maps.
struct ChainComplex {
    Ring ring = Ring::rationals();
    int shift = -1;
    std::vector<int> dims;
    std::vector<SparseMat> d;

    int top() const { return static_cast<int>(dims.size()) - 1; }
    std::vector<std::string> checkSquares() const;
};

struct DegreeHomology {
    int degree = 0;
    int kernelDim = 0;
    int imageDim = 0;
    int homologyDim = 0;
    std::vector<SparseVec> representatives;
    // Nonzero elementary-divisor exponents of the incoming differential over
    // a truncated series ring; empty over fields.
    std::vector<int> torsion;
};

struct HomologyReport {
    Ring ring = Ring::rationals();
    std::vector<DegreeHomology> rows;

    std::string str() const;
    std::string tsv() const;
};

// Exact homology of degrees [lo, hi]. Over a series ring the complex is
// expanded over Q (each free coordinate becomes N coordinates h^k e_i) and
// torsion is reported from the elementary divisors of the incoming map.
HomologyReport homology(const ChainComplex& C, int lo, int hi);

// Homologically indexed double complex on an explicit window; differentials
// keyed by their source bidegree and required to anticommute.
struct Bicomplex {
    Ring ring = Ring::rationals();
    int hShift = -1;
    int vShift = -1;
    std::map<std::pair<int, int>, int> dims;
    std::map<std::pair<int, int>, SparseMat> dh; // (r,s) -> (r+hShift, s)
    std::map<std::pair<int, int>, SparseMat> dv; // (r,s) -> (r, s+vShift)

    int dim(int r, int s) const;
    SparseMat horizontal(int r, int s) const; // zero map if unset
    SparseMat vertical(int r, int s) const;
    // dh^2 = 0, dv^2 = 0, dh dv + dv dh = 0 wherever composable in-window.
    std::vector<std::string> checkSquares() const;
    // Total complex D = dh + dv over total degrees [lo, hi]; summands of a
    // total degree ordered by increasing r.
    ChainComplex totalize(int lo, int hi) const;
};

// Para(co)cyclic object realized up to a degree cap. Faces connect degrees n
// and n-1 (cyclic: d_i : X_n -> X_{n-1}; cocyclic: delta_i : X^{n-1} -> X^n),
// degeneracies connect n+1 and n (cyclic: s_j : X_n -> X_{n+1}, stored at n;
// cocyclic: sigma_j : X^{n+1} -> X^n, stored at n), and t_n / tau_n is an
// endomorphism of degree n.
class ParaCyclicObject {
public:
    ParaCyclicObject() = default;
    ParaCyclicObject(Ring ring, Direction dir) : ring_(ring), dir_(dir) {}

    const Ring& ring() const { return ring_; }
    Direction direction() const { return dir_; }
    int maxDegree() const { return static_cast<int>(dims_.size()) - 1; }
    int dim(int n) const { return dims_.at(n); }

    void setDegree(int n, int dim);
    void setFace(int n, int i, SparseMat m);
    void setDegeneracy(int n, int j, SparseMat m);
    void setCyclic(int n, SparseMat m);
    const SparseMat& face(int n, int i) const { return faces_.at(n).at(i); }
    const SparseMat& degeneracy(int n, int j) const { return degs_.at(n).at(j); }
    const SparseMat& cyclic(int n) const { return cyc_.at(n); }

    // Empty iff all simplicial, cyclic-compatibility and t^{n+1} = id
    // identities hold exactly at realized degrees <= maxDegree. A paracyclic
    // object that fails only t^{n+1} = id is reported as such.
    std::vector<std::string> verifyCyclic(int maxDegree) const;

    // b = sum (-1)^i d_i in the object's native direction.
    SparseMat hochschildB(int n) const;
    // Connes operator B = (1 - lambda) s_ext N, native direction.
    SparseMat connesB(int n) const;

    // Cyclic dual under the self-duality of the cyclic category; flips the
    // direction and inverts t. Requires invertible t at realized degrees.
    ParaCyclicObject dualCyclic() const;

    // Hochschild complex of b (chain for cyclic, cochain for cocyclic).
    ChainComplex bComplex(int maxDegree) const;
    // Totalized (b, B) mixed complex: degree n holds X_{n-2i} for 2i <= n.
    ChainComplex cyclicTotalComplex(int maxDegree) const;

private:
    // Matrices in the cyclic orientation (transposed for cocyclic objects).
    SparseMat viewFace(int n, int i) const;
    SparseMat viewDegeneracy(int n, int j) const;
    SparseMat viewCyclic(int n) const;
    SparseMat viewB(int n) const;
    SparseMat viewConnes(int n) const;

    Ring ring_ = Ring::rationals();
    Direction dir_ = Direction::Cyclic;
    std::vector<int> dims_;
    std::vector<std::vector<SparseMat>> faces_;
    std::vector<std::vector<SparseMat>> degs_;
    std::vector<SparseMat> cyc_;
};

// The point object: k in every degree, all structure maps identity.
ParaCyclicObject pointObject(Ring ring, Direction dir, int cap);

// Cyclic module of a finite-dimensional unital algebra: X_n = A^{(x) n+1}
// with the standard faces, unit insertions and cyclic rotation. mult[i][j]
// holds the structure constants of e_i e_j; unit is the coordinate vector of
// 1 in the chosen basis.
ParaCyclicObject cyclicObjectOfAlgebra(Ring ring,
                                       const std::vector<std::vector<SparseVec>>& mult,
                                       const SparseVec& unit, int cap);

} // namespace hopfcyc

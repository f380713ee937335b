#pragma once

#include "hopfcyc/scalar.hpp"

#include <map>
#include <optional>
#include <vector>

namespace hopfcyc {

// index -> nonzero coefficient
using SparseVec = std::map<int, Scalar>;

SparseVec sparseAdd(const SparseVec& a, const SparseVec& b);
SparseVec sparseScale(const SparseVec& a, const Scalar& c);
// a += c*b
void sparseAxpy(SparseVec& a, const Scalar& c, const SparseVec& b);

struct SparseMat {
    int rows = 0;
    int cols = 0;
    Ring ring = Ring::rationals();
    std::vector<SparseVec> row; // size rows

    static SparseMat zero(Ring ring, int rows, int cols);
    static SparseMat identity(Ring ring, int n);
    void set(int r, int c, const Scalar& v);
    Scalar get(int r, int c) const;
    SparseVec apply(const SparseVec& v) const;            // matrix * column vector
    std::vector<Scalar> applyDense(const std::vector<Scalar>& v) const;
    SparseMat operator*(const SparseMat& o) const;
    SparseMat operator+(const SparseMat& o) const;
    SparseMat operator-(const SparseMat& o) const;
    SparseMat scaled(const Scalar& c) const;
    SparseMat transposed() const;
    bool operator==(const SparseMat& o) const;
    bool isZero() const;
    std::string str() const;
};

// Fully reduced row echelon form over a field (or with unit pivots over a
// truncated-series ring; a column with only non-unit entries raises
// NotInvertibleError there). Pivot choice: per column, the candidate row with
// the fewest nonzeros (ties by row order) - deterministic and sparsity-aware.
struct Echelon {
    std::vector<SparseVec> rows;   // reduced rows, one per pivot
    std::vector<int> pivotCols;    // pivot column of each row, increasing
    int cols = 0;
    Ring ring = Ring::rationals();

    int rank() const { return static_cast<int>(rows.size()); }
    // Reduces v modulo the row space (eliminates pivot coordinates).
    SparseVec reduce(const SparseVec& v) const;
    bool inRowSpace(const SparseVec& v) const;
};

Echelon echelon(const SparseMat& m);
Echelon echelonFromRows(Ring ring, int cols, const std::vector<SparseVec>& rows);

int rank(const SparseMat& m);
// Basis of the right kernel {x : m x = 0}.
std::vector<SparseVec> kernelBasis(const SparseMat& m);
// Solves m x = b; nullopt if inconsistent.
std::optional<SparseVec> solve(const SparseMat& m, const SparseVec& b);
// Inverse of a square invertible matrix; throws NotInvertibleError.
SparseMat inverseMatrix(const SparseMat& m);
bool isInvertible(const SparseMat& m);

// Ambient space modulo the span of relation vectors. Quotient basis =
// non-pivot ambient coordinates.
class QuotientSpace {
public:
    QuotientSpace() = default;
    QuotientSpace(Ring ring, int ambientDim, const std::vector<SparseVec>& relations);

    int ambientDim() const { return ambient_; }
    int dim() const { return static_cast<int>(freeCols_.size()); }
    // Ambient index of quotient coordinate i.
    int representative(int i) const { return freeCols_[i]; }
    // Image of an ambient vector in quotient coordinates.
    SparseVec reduce(const SparseVec& ambient) const;

private:
    Ring ring_ = Ring::rationals();
    int ambient_ = 0;
    Echelon rels_;
    std::vector<int> freeCols_;
    std::vector<int> colToQuot_; // ambient col -> quotient index or -1
};

// Span of vectors inside an ambient space, with coordinates relative to a
// reduced basis.
class SubSpace {
public:
    SubSpace() = default;
    SubSpace(Ring ring, int ambientDim, const std::vector<SparseVec>& spanning);

    int ambientDim() const { return ambient_; }
    int dim() const { return basis_.rank(); }
    const SparseVec& basisVector(int i) const { return basis_.rows[i]; }
    bool contains(const SparseVec& v) const { return basis_.inRowSpace(v); }
    // Coordinates of an ambient vector in the reduced basis; nullopt if the
    // vector is not in the subspace.
    std::optional<SparseVec> coords(const SparseVec& v) const;

private:
    Ring ring_ = Ring::rationals();
    int ambient_ = 0;
    Echelon basis_;
};

// Elementary divisors h^{v_1} <= ... <= h^{v_r} of a matrix over Q[h]/(h^N)
// (v < N), via valuation-pivoted elimination.
std::vector<int> seriesElementaryDivisors(const SparseMat& m);

} // namespace hopfcyc

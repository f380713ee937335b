#include "hopfcyc/linalg.hpp"

#include "hopfcyc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace hopfcyc {

SparseVec sparseAdd(const SparseVec& a, const SparseVec& b) {
    SparseVec r = a;
    for (const auto& [i, c] : b) {
        auto [it, fresh] = r.emplace(i, c);
        if (!fresh) {
            it->second += c;
            if (it->second.isZero()) r.erase(it);
        }
    }
    return r;
}

SparseVec sparseScale(const SparseVec& a, const Scalar& c) {
    SparseVec r;
    if (c.isZero()) return r;
    for (const auto& [i, x] : a) {
        Scalar y = x * c;
        if (!y.isZero()) r.emplace(i, y);
    }
    return r;
}

void sparseAxpy(SparseVec& a, const Scalar& c, const SparseVec& b) {
    if (c.isZero()) return;
    for (const auto& [i, x] : b) {
        Scalar y = x * c;
        if (y.isZero()) continue;
        auto [it, fresh] = a.emplace(i, y);
        if (!fresh) {
            it->second += y;
            if (it->second.isZero()) a.erase(it);
        }
    }
}

SparseMat SparseMat::zero(Ring ring, int rows, int cols) {
    SparseMat m;
    m.rows = rows;
    m.cols = cols;
    m.ring = ring;
    m.row.resize(rows);
    return m;
}

SparseMat SparseMat::identity(Ring ring, int n) {
    SparseMat m = zero(ring, n, n);
    for (int i = 0; i < n; ++i) m.row[i].emplace(i, Scalar::one(ring));
    return m;
}

void SparseMat::set(int r, int c, const Scalar& v) {
    if (v.isZero()) row[r].erase(c);
    else row[r][c] = v;
}

Scalar SparseMat::get(int r, int c) const {
    auto it = row[r].find(c);
    return it == row[r].end() ? Scalar::zero(ring) : it->second;
}

SparseVec SparseMat::apply(const SparseVec& v) const {
    SparseVec r;
    for (int i = 0; i < rows; ++i) {
        Scalar acc = Scalar::zero(ring);
        for (const auto& [j, c] : row[i]) {
            auto it = v.find(j);
            if (it != v.end()) acc += c * it->second;
        }
        if (!acc.isZero()) r.emplace(i, acc);
    }
    return r;
}

std::vector<Scalar> SparseMat::applyDense(const std::vector<Scalar>& v) const {
    std::vector<Scalar> r(rows, Scalar::zero(ring));
    for (int i = 0; i < rows; ++i)
        for (const auto& [j, c] : row[i]) r[i] += c * v[j];
    return r;
}

SparseMat SparseMat::operator*(const SparseMat& o) const {
    if (cols != o.rows) throw SlotMismatchError("matrix dimension mismatch in product");
    SparseMat r = zero(ring, rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (const auto& [k, c] : row[i]) sparseAxpy(r.row[i], c, o.row[k]);
    return r;
}

SparseMat SparseMat::operator+(const SparseMat& o) const {
    if (rows != o.rows || cols != o.cols)
        throw SlotMismatchError("matrix dimension mismatch in sum");
    SparseMat r = *this;
    for (int i = 0; i < rows; ++i) r.row[i] = sparseAdd(r.row[i], o.row[i]);
    return r;
}

SparseMat SparseMat::operator-(const SparseMat& o) const {
    return *this + o.scaled(Scalar::fromInt(ring, -1));
}

SparseMat SparseMat::scaled(const Scalar& c) const {
    SparseMat r = zero(ring, rows, cols);
    for (int i = 0; i < rows; ++i) r.row[i] = sparseScale(row[i], c);
    return r;
}

SparseMat SparseMat::transposed() const {
    SparseMat r = zero(ring, cols, rows);
    for (int i = 0; i < rows; ++i)
        for (const auto& [j, c] : row[i]) r.row[j].emplace(i, c);
    return r;
}

bool SparseMat::operator==(const SparseMat& o) const {
    return rows == o.rows && cols == o.cols && row == o.row;
}

bool SparseMat::isZero() const {
    for (const auto& r : row)
        if (!r.empty()) return false;
    return true;
}

std::string SparseMat::str() const {
    std::ostringstream s;
    s << rows << "x" << cols;
    for (int i = 0; i < rows; ++i)
        for (const auto& [j, c] : row[i]) s << " (" << i << "," << j << ")=" << c.str();
    return s.str();
}

SparseVec Echelon::reduce(const SparseVec& v) const {
    SparseVec r = v;
    for (size_t k = 0; k < rows.size(); ++k) {
        auto it = r.find(pivotCols[k]);
        if (it == r.end()) continue;
        Scalar c = -it->second;
        sparseAxpy(r, c, rows[k]);
    }
    return r;
}

bool Echelon::inRowSpace(const SparseVec& v) const { return reduce(v).empty(); }

Echelon echelonFromRows(Ring ring, int cols, const std::vector<SparseVec>& input) {
    Echelon e;
    e.cols = cols;
    e.ring = ring;
    std::vector<SparseVec> pending;
    pending.reserve(input.size());
    for (const auto& r : input)
        if (!r.empty()) pending.push_back(r);

    // column-by-column elimination with fewest-nonzeros pivot choice
    std::vector<std::pair<SparseVec, int>> done; // (row, pivot col)
    for (int col = 0; col < cols && !pending.empty(); ++col) {
        int best = -1;
        size_t bestNnz = 0;
        for (size_t i = 0; i < pending.size(); ++i) {
            auto it = pending[i].find(col);
            if (it == pending[i].end()) continue;
            // lowest nonzero coordinate must be col (rows already reduced below col)
            if (pending[i].begin()->first != col) continue;
            if (!it->second.invertible()) {
                if (ring.kind == RingKind::Series) continue;
                throw NotInvertibleError("non-invertible pivot candidate");
            }
            if (best < 0 || pending[i].size() < bestNnz) {
                best = static_cast<int>(i);
                bestNnz = pending[i].size();
            }
        }
        if (best < 0) {
            // check no row is stuck with a non-unit leading entry at this column
            for (const auto& r : pending)
                if (r.begin()->first == col)
                    throw NotInvertibleError(
                        "series-ring elimination hit a column with only non-unit entries");
            continue;
        }
        SparseVec piv = std::move(pending[best]);
        pending.erase(pending.begin() + best);
        piv = sparseScale(piv, piv.at(col).inverse());
        for (auto& r : pending) {
            auto it = r.find(col);
            if (it != r.end()) sparseAxpy(r, -it->second, piv);
        }
        std::erase_if(pending, [](const SparseVec& r) { return r.empty(); });
        done.emplace_back(std::move(piv), col);
    }
    std::sort(done.begin(), done.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    // back-substitution: fully reduce earlier rows against later pivots
    for (size_t i = 0; i < done.size(); ++i)
        for (size_t j = i + 1; j < done.size(); ++j) {
            auto it = done[i].first.find(done[j].second);
            if (it != done[i].first.end())
                sparseAxpy(done[i].first, -it->second, done[j].first);
        }
    for (auto& [r, p] : done) {
        e.rows.push_back(std::move(r));
        e.pivotCols.push_back(p);
    }
    return e;
}

Echelon echelon(const SparseMat& m) { return echelonFromRows(m.ring, m.cols, m.row); }

int rank(const SparseMat& m) { return echelon(m).rank(); }

std::vector<SparseVec> kernelBasis(const SparseMat& m) {
    Echelon e = echelon(m);
    std::vector<bool> isPivot(m.cols, false);
    for (int p : e.pivotCols) isPivot[p] = true;
    std::vector<SparseVec> out;
    for (int j = 0; j < m.cols; ++j) {
        if (isPivot[j]) continue;
        SparseVec v;
        v.emplace(j, Scalar::one(m.ring));
        for (size_t k = 0; k < e.rows.size(); ++k) {
            auto it = e.rows[k].find(j);
            if (it != e.rows[k].end()) {
                Scalar c = -it->second;
                if (!c.isZero()) v.emplace(e.pivotCols[k], c);
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<SparseVec> solve(const SparseMat& m, const SparseVec& b) {
    // eliminate on [m | b] with b as extra column m.cols
    std::vector<SparseVec> rowsExt = m.row;
    for (const auto& [i, c] : b) rowsExt[i].emplace(m.cols, c);
    Echelon e = echelonFromRows(m.ring, m.cols + 1, rowsExt);
    SparseVec x;
    for (size_t k = 0; k < e.rows.size(); ++k) {
        if (e.pivotCols[k] == m.cols) return std::nullopt; // inconsistent
        auto it = e.rows[k].find(m.cols);
        if (it != e.rows[k].end()) x.emplace(e.pivotCols[k], it->second);
    }
    return x;
}

bool isInvertible(const SparseMat& m) {
    if (m.rows != m.cols) return false;
    try {
        return rank(m) == m.rows;
    } catch (const NotInvertibleError&) {
        return false;
    }
}

SparseMat inverseMatrix(const SparseMat& m) {
    if (m.rows != m.cols) throw NotInvertibleError("non-square matrix");
    int n = m.rows;
    std::vector<SparseVec> rowsExt = m.row;
    for (int i = 0; i < n; ++i) rowsExt[i].emplace(n + i, Scalar::one(m.ring));
    Echelon e = echelonFromRows(m.ring, 2 * n, rowsExt);
    SparseMat inv = SparseMat::zero(m.ring, n, n);
    for (size_t k = 0; k < e.rows.size(); ++k) {
        int p = e.pivotCols[k];
        if (p >= n) throw NotInvertibleError("singular matrix");
        for (const auto& [j, c] : e.rows[k])
            if (j >= n) inv.row[p].emplace(j - n, c);
    }
    if (e.rank() != n) throw NotInvertibleError("singular matrix");
    return inv;
}

QuotientSpace::QuotientSpace(Ring ring, int ambientDim, const std::vector<SparseVec>& relations)
    : ring_(ring), ambient_(ambientDim) {
    rels_ = echelonFromRows(ring, ambientDim, relations);
    std::vector<bool> isPivot(ambientDim, false);
    for (int p : rels_.pivotCols) isPivot[p] = true;
    colToQuot_.assign(ambientDim, -1);
    for (int j = 0; j < ambientDim; ++j) {
        if (!isPivot[j]) {
            colToQuot_[j] = static_cast<int>(freeCols_.size());
            freeCols_.push_back(j);
        }
    }
}

SparseVec QuotientSpace::reduce(const SparseVec& ambient) const {
    SparseVec red = rels_.reduce(ambient);
    SparseVec out;
    for (const auto& [j, c] : red) {
        if (colToQuot_[j] < 0) throw Error("quotient reduction left a pivot coordinate");
        out.emplace(colToQuot_[j], c);
    }
    return out;
}

SubSpace::SubSpace(Ring ring, int ambientDim, const std::vector<SparseVec>& spanning)
    : ring_(ring), ambient_(ambientDim) {
    basis_ = echelonFromRows(ring, ambientDim, spanning);
}

std::optional<SparseVec> SubSpace::coords(const SparseVec& v) const {
    SparseVec r = v;
    SparseVec out;
    for (size_t k = 0; k < basis_.rows.size(); ++k) {
        auto it = r.find(basis_.pivotCols[k]);
        if (it == r.end()) continue;
        Scalar c = it->second;
        out.emplace(static_cast<int>(k), c);
        sparseAxpy(r, -c, basis_.rows[k]);
    }
    if (!r.empty()) return std::nullopt;
    return out;
}

std::vector<int> seriesElementaryDivisors(const SparseMat& m) {
    if (m.ring.kind != RingKind::Series)
        throw MixedRingError("seriesElementaryDivisors needs a series ring");
    int N = m.ring.param;
    std::vector<SparseVec> rows = m.row;
    std::vector<int> divisors;
    for (;;) {
        // find the entry with minimal h-valuation
        int bestR = -1, bestC = -1, bestV = N;
        for (size_t i = 0; i < rows.size(); ++i)
            for (const auto& [j, c] : rows[i]) {
                int v = c.hValuation();
                if (v < bestV) {
                    bestV = v;
                    bestR = static_cast<int>(i);
                    bestC = j;
                }
            }
        if (bestR < 0) break;
        divisors.push_back(bestV);
        // pivot = unit * h^v; clear its column, then drop row and column
        SparseVec piv = rows[bestR];
        rows.erase(rows.begin() + bestR);
        Scalar pivEntry = piv.at(bestC);
        // unit part u with pivEntry = u*h^v: divide all of piv by u
        // u = pivEntry / h^v recovered by shifting coefficients
        Scalar hpow = Scalar::varPower(m.ring, bestV);
        // find unit u solving u*h^v = pivEntry: shift down
        QPoly shifted;
        for (int k = bestV; k < N; ++k)
            shifted = shifted + QPoly::monomial(k - bestV, pivEntry.num().coeff(k));
        Scalar u = Scalar::fromFraction(m.ring, shifted, QPoly(mpq_class(1)));
        Scalar uinv = u.inverse();
        piv = sparseScale(piv, uinv); // pivot entry now exactly h^v
        for (auto& r : rows) {
            auto it = r.find(bestC);
            if (it == r.end()) continue;
            // entry has valuation >= v, so entry / h^v is well-defined mod h^{N-v};
            // the multiple of piv to subtract is (entry shifted down by v)
            QPoly sh;
            for (int k = bestV; k < N; ++k)
                sh = sh + QPoly::monomial(k - bestV, it->second.num().coeff(k));
            Scalar factor = Scalar::fromFraction(m.ring, sh, QPoly(mpq_class(1)));
            sparseAxpy(r, -factor, piv);
            r.erase(bestC);
        }
        for (auto& r : rows) r.erase(bestC);
        std::erase_if(rows, [](const SparseVec& r) { return r.empty(); });
    }
    std::sort(divisors.begin(), divisors.end());
    return divisors;
}

} // namespace hopfcyc

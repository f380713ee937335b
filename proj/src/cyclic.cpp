#include "hopfcyc/cyclic.hpp"

#include "hopfcyc/errors.hpp"

#include <algorithm>
#include <sstream>

namespace hopfcyc {

namespace {

SparseMat matPow(const SparseMat& m, int k) {
    SparseMat out = SparseMat::identity(m.ring, m.rows);
    for (int i = 0; i < k; ++i) out = m * out;
    return out;
}

// Q-expansion of a series matrix: coordinate i becomes the N coordinates
// h^k e_i, k = 0..N-1; multiplication by a series is lower-triangular Toeplitz.
SparseMat expandSeries(const SparseMat& m) {
    int N = m.ring.param;
    Ring Q = Ring::rationals();
    SparseMat out = SparseMat::zero(Q, m.rows * N, m.cols * N);
    for (int r = 0; r < m.rows; ++r)
        for (const auto& [c, s] : m.row[r]) {
            const QPoly& p = s.num();
            for (int k = 0; k <= p.degree() && k < N; ++k) {
                mpq_class ck = p.coeff(k);
                if (ck == 0) continue;
                Scalar cq(Q, ck);
                for (int j = 0; j + k < N; ++j) out.set(r * N + j + k, c * N + j, cq);
            }
        }
    return out;
}

std::vector<SparseVec> matColumns(const SparseMat& m) {
    SparseMat t = m.transposed();
    std::vector<SparseVec> cols;
    cols.reserve(t.rows);
    for (int j = 0; j < t.rows; ++j) cols.push_back(t.row[j]);
    return cols;
}

} // namespace

std::string directionName(Direction d) {
    return d == Direction::Cyclic ? "cyclic" : "cocyclic";
}

std::vector<std::string> ChainComplex::checkSquares() const {
    std::vector<std::string> issues;
    for (int n = 0; n <= top(); ++n) {
        int mid = n + shift;
        if (mid < 0 || mid > top()) continue;
        if (mid + shift < -1 || mid + shift > top() + 1) continue;
        SparseMat prod = d.at(mid) * d.at(n);
        if (!prod.isZero())
            issues.push_back("d^2 != 0 from degree " + std::to_string(n));
    }
    return issues;
}

int Bicomplex::dim(int r, int s) const {
    auto it = dims.find({r, s});
    return it == dims.end() ? 0 : it->second;
}

SparseMat Bicomplex::horizontal(int r, int s) const {
    auto it = dh.find({r, s});
    if (it != dh.end()) return it->second;
    return SparseMat::zero(ring, dim(r + hShift, s), dim(r, s));
}

SparseMat Bicomplex::vertical(int r, int s) const {
    auto it = dv.find({r, s});
    if (it != dv.end()) return it->second;
    return SparseMat::zero(ring, dim(r, s + vShift), dim(r, s));
}

std::vector<std::string> Bicomplex::checkSquares() const {
    std::vector<std::string> issues;
    auto at = [](int r, int s) {
        return "(" + std::to_string(r) + "," + std::to_string(s) + ")";
    };
    for (const auto& [rs, n] : dims) {
        auto [r, s] = rs;
        if (dim(r + 2 * hShift, s) >= 0 && dim(r + hShift, s) > 0)
            if (!(horizontal(r + hShift, s) * horizontal(r, s)).isZero())
                issues.push_back("horizontal square nonzero at " + at(r, s));
        if (dim(r, s + vShift) > 0)
            if (!(vertical(r, s + vShift) * vertical(r, s)).isZero())
                issues.push_back("vertical square nonzero at " + at(r, s));
        SparseMat anti = vertical(r + hShift, s) * horizontal(r, s) +
                         horizontal(r, s + vShift) * vertical(r, s);
        if (!anti.isZero()) issues.push_back("differentials do not anticommute at " + at(r, s));
    }
    return issues;
}

ChainComplex Bicomplex::totalize(int lo, int hi) const {
    if (hShift != vShift)
        throw SlotMismatchError("totalization needs equal horizontal and vertical shifts");
    ChainComplex C;
    C.ring = ring;
    C.shift = hShift;
    if (lo != 0) throw SlotMismatchError("totalization window must start at degree 0");
    // summands of total degree n, ordered by increasing r
    auto summands = [&](int n) {
        std::vector<std::pair<int, int>> out;
        for (const auto& [rs, d] : dims)
            if (rs.first + rs.second == n && d > 0) out.push_back(rs);
        std::sort(out.begin(), out.end());
        return out;
    };
    auto offsets = [&](const std::vector<std::pair<int, int>>& parts) {
        std::map<std::pair<int, int>, int> off;
        int total = 0;
        for (const auto& rs : parts) {
            off[rs] = total;
            total += dim(rs.first, rs.second);
        }
        return std::make_pair(off, total);
    };
    for (int n = 0; n <= hi; ++n) {
        auto parts = summands(n);
        auto [offSrc, dimSrc] = offsets(parts);
        auto tparts = summands(n + hShift);
        auto [offTgt, dimTgt] = offsets(tparts);
        C.dims.push_back(dimSrc);
        SparseMat D = SparseMat::zero(ring, dimTgt, dimSrc);
        auto place = [&](const SparseMat& block, int r0, int c0) {
            for (int r = 0; r < block.rows; ++r)
                for (const auto& [c, v] : block.row[r]) D.set(r0 + r, c0 + c, v);
        };
        for (const auto& [r, s] : parts) {
            auto hKey = std::make_pair(r + hShift, s);
            if (offTgt.count(hKey)) place(horizontal(r, s), offTgt.at(hKey), offSrc.at({r, s}));
            auto vKey = std::make_pair(r, s + vShift);
            if (offTgt.count(vKey)) place(vertical(r, s), offTgt.at(vKey), offSrc.at({r, s}));
        }
        C.d.push_back(std::move(D));
    }
    return C;
}

void ParaCyclicObject::setDegree(int n, int dim) {
    if (n >= static_cast<int>(dims_.size())) {
        dims_.resize(n + 1, 0);
        faces_.resize(n + 1);
        degs_.resize(n + 1);
        cyc_.resize(n + 1, SparseMat::zero(ring_, 0, 0));
    }
    dims_[n] = dim;
}

void ParaCyclicObject::setFace(int n, int i, SparseMat m) {
    if (i >= static_cast<int>(faces_.at(n).size())) faces_[n].resize(i + 1);
    faces_[n][i] = std::move(m);
}

void ParaCyclicObject::setDegeneracy(int n, int j, SparseMat m) {
    if (j >= static_cast<int>(degs_.at(n).size())) degs_[n].resize(j + 1);
    degs_[n][j] = std::move(m);
}

void ParaCyclicObject::setCyclic(int n, SparseMat m) { cyc_.at(n) = std::move(m); }

SparseMat ParaCyclicObject::viewFace(int n, int i) const {
    const SparseMat& m = faces_.at(n).at(i);
    return dir_ == Direction::Cyclic ? m : m.transposed();
}

SparseMat ParaCyclicObject::viewDegeneracy(int n, int j) const {
    const SparseMat& m = degs_.at(n).at(j);
    return dir_ == Direction::Cyclic ? m : m.transposed();
}

SparseMat ParaCyclicObject::viewCyclic(int n) const {
    const SparseMat& m = cyc_.at(n);
    return dir_ == Direction::Cyclic ? m : m.transposed();
}

std::vector<std::string> ParaCyclicObject::verifyCyclic(int maxDegree) const {
    std::vector<std::string> issues;
    int m = std::min(maxDegree, this->maxDegree());
    auto push = [&](const std::string& s) {
        if (issues.size() < 60) issues.push_back(s);
    };
    auto deg = [](int n) { return " at degree " + std::to_string(n); };
    // structural completeness
    for (int n = 0; n <= m; ++n) {
        if (n >= 1 && static_cast<int>(faces_.at(n).size()) != n + 1)
            push("expected " + std::to_string(n + 1) + " faces" + deg(n));
        if (n + 1 <= m && static_cast<int>(degs_.at(n).size()) != n + 1)
            push("expected " + std::to_string(n + 1) + " degeneracies" + deg(n));
        if (cyc_.at(n).rows != dims_.at(n) || cyc_.at(n).cols != dims_.at(n))
            push("cyclic operator has wrong shape" + deg(n));
    }
    if (!issues.empty()) return issues;

    for (int n = 2; n <= m; ++n)
        for (int i = 0; i < static_cast<int>(faces_[n].size()); ++i)
            for (int j = i + 1; j <= n; ++j)
                if (!(viewFace(n - 1, i) * viewFace(n, j) ==
                      viewFace(n - 1, j - 1) * viewFace(n, i)))
                    push("d_" + std::to_string(i) + " d_" + std::to_string(j) +
                         " != d_" + std::to_string(j - 1) + " d_" + std::to_string(i) +
                         deg(n));
    for (int n = 0; n + 2 <= m; ++n)
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j)
                if (!(viewDegeneracy(n + 1, i) * viewDegeneracy(n, j) ==
                      viewDegeneracy(n + 1, j + 1) * viewDegeneracy(n, i)))
                    push("s_" + std::to_string(i) + " s_" + std::to_string(j) +
                         " != s_" + std::to_string(j + 1) + " s_" + std::to_string(i) +
                         deg(n));
    for (int n = 0; n + 1 <= m; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                SparseMat lhs = viewFace(n + 1, i) * viewDegeneracy(n, j);
                SparseMat rhs = SparseMat::identity(ring_, dims_[n]);
                if (i < j)
                    rhs = viewDegeneracy(n - 1, j - 1) * viewFace(n, i);
                else if (i > j + 1)
                    rhs = viewDegeneracy(n - 1, j) * viewFace(n, i - 1);
                if (!(lhs == rhs))
                    push("d_" + std::to_string(i) + " s_" + std::to_string(j) +
                         " identity fails" + deg(n));
            }
    for (int n = 1; n <= m; ++n) {
        for (int i = 1; i <= n; ++i)
            if (!(viewFace(n, i) * viewCyclic(n) == viewCyclic(n - 1) * viewFace(n, i - 1)))
                push("d_" + std::to_string(i) + " t != t d_" + std::to_string(i - 1) +
                     deg(n));
        if (!(viewFace(n, 0) * viewCyclic(n) == viewFace(n, n)))
            push("d_0 t != d_" + std::to_string(n) + deg(n));
    }
    for (int n = 0; n + 1 <= m; ++n) {
        for (int i = 1; i <= n; ++i)
            if (!(viewDegeneracy(n, i) * viewCyclic(n) ==
                  viewCyclic(n + 1) * viewDegeneracy(n, i - 1)))
                push("s_" + std::to_string(i) + " t != t s_" + std::to_string(i - 1) +
                     deg(n));
        if (!(viewDegeneracy(n, 0) * viewCyclic(n) ==
              viewCyclic(n + 1) * viewCyclic(n + 1) * viewDegeneracy(n, n)))
            push("s_0 t != t^2 s_" + std::to_string(n) + deg(n));
    }
    for (int n = 0; n <= m; ++n)
        if (!(matPow(viewCyclic(n), n + 1) == SparseMat::identity(ring_, dims_[n])))
            push("t^" + std::to_string(n + 1) + " != id" + deg(n) +
                 " (paracyclic only)");
    return issues;
}

SparseMat ParaCyclicObject::viewB(int n) const {
    SparseMat b = SparseMat::zero(ring_, dims_.at(n - 1), dims_.at(n));
    Scalar sign = Scalar::one(ring_);
    for (int i = 0; i <= n; ++i) {
        b = b + viewFace(n, i).scaled(sign);
        sign = -sign;
    }
    return b;
}

SparseMat ParaCyclicObject::viewConnes(int n) const {
    // B = (1 - lambda_{n+1}) s_ext N with lambda_k = (-1)^k t_k and
    // s_ext = t_{n+1} s_n
    Scalar one = Scalar::one(ring_);
    Scalar lamSign = (n % 2 == 0) ? one : -one;
    SparseMat lam = viewCyclic(n).scaled(lamSign);
    SparseMat N = SparseMat::zero(ring_, dims_.at(n), dims_.at(n));
    SparseMat pw = SparseMat::identity(ring_, dims_.at(n));
    for (int k = 0; k <= n; ++k) {
        N = N + pw;
        pw = lam * pw;
    }
    SparseMat sExt = viewCyclic(n + 1) * viewDegeneracy(n, n);
    SparseMat lamUp = viewCyclic(n + 1).scaled((n % 2 == 0) ? -one : one);
    return (SparseMat::identity(ring_, dims_.at(n + 1)) - lamUp) * sExt * N;
}

SparseMat ParaCyclicObject::hochschildB(int n) const {
    SparseMat b = viewB(n);
    return dir_ == Direction::Cyclic ? b : b.transposed();
}

SparseMat ParaCyclicObject::connesB(int n) const {
    SparseMat B = viewConnes(n);
    return dir_ == Direction::Cyclic ? B : B.transposed();
}

ParaCyclicObject ParaCyclicObject::dualCyclic() const {
    ParaCyclicObject D(ring_, dir_ == Direction::Cyclic ? Direction::Cocyclic
                                                        : Direction::Cyclic);
    int top = maxDegree();
    for (int n = 0; n <= top; ++n) D.setDegree(n, dims_[n]);
    for (int n = 0; n <= top; ++n) D.setCyclic(n, inverseMatrix(cyc_.at(n)));
    if (dir_ == Direction::Cocyclic) {
        // d_i = sigma_{i-1} (i >= 1), d_0 = sigma_{n-1} tau_n, s_j = delta_j
        for (int n = 1; n <= top; ++n) {
            for (int i = 1; i <= n; ++i) D.setFace(n, i, degs_.at(n - 1).at(i - 1));
            D.setFace(n, 0, degs_.at(n - 1).at(n - 1) * cyc_.at(n));
        }
        for (int n = 0; n + 1 <= top; ++n)
            for (int j = 0; j <= n; ++j) D.setDegeneracy(n, j, faces_.at(n + 1).at(j));
    } else {
        // delta_j = s_j (j < n), delta_n = t_n s_{n-1} t_{n-1}^{-1},
        // sigma_j = d_{j+1}
        for (int n = 1; n <= top; ++n) {
            for (int j = 0; j < n; ++j) D.setFace(n, j, degs_.at(n - 1).at(j));
            D.setFace(n, n, cyc_.at(n) * degs_.at(n - 1).at(n - 1) *
                                inverseMatrix(cyc_.at(n - 1)));
        }
        for (int n = 0; n + 1 <= top; ++n)
            for (int j = 0; j <= n; ++j) D.setDegeneracy(n, j, faces_.at(n + 1).at(j + 1));
    }
    return D;
}

ChainComplex ParaCyclicObject::bComplex(int maxDegree) const {
    int m = std::min(maxDegree, this->maxDegree());
    ChainComplex C;
    C.ring = ring_;
    C.shift = dir_ == Direction::Cyclic ? -1 : 1;
    for (int n = 0; n <= m; ++n) C.dims.push_back(dims_[n]);
    for (int n = 0; n <= m; ++n) {
        if (dir_ == Direction::Cyclic)
            C.d.push_back(n == 0 ? SparseMat::zero(ring_, 0, dims_[0]) : hochschildB(n));
        else
            C.d.push_back(n == m ? SparseMat::zero(ring_, 0, dims_[m])
                                 : hochschildB(n + 1));
    }
    return C;
}

ChainComplex ParaCyclicObject::cyclicTotalComplex(int maxDegree) const {
    int m = std::min(maxDegree, this->maxDegree());
    // cyclic orientation first: Tot_n = sum_i X_{n-2i}, D = b + B
    std::vector<int> totDims;
    std::vector<SparseMat> totD;
    auto parts = [&](int n) {
        std::vector<int> out;
        for (int d = n; d >= 0; d -= 2) out.push_back(d);
        return out;
    };
    for (int n = 0; n <= m; ++n) {
        auto src = parts(n);
        int dimSrc = 0;
        std::vector<int> offSrc;
        for (int d : src) {
            offSrc.push_back(dimSrc);
            dimSrc += dims_[d];
        }
        totDims.push_back(dimSrc);
        int dimTgt = 0;
        std::vector<int> offTgt;
        for (int d : parts(n - 1)) {
            offTgt.push_back(dimTgt);
            dimTgt += dims_[d];
        }
        SparseMat D = SparseMat::zero(ring_, dimTgt, dimSrc);
        auto place = [&](const SparseMat& block, int r0, int c0) {
            for (int r = 0; r < block.rows; ++r)
                for (const auto& [c, v] : block.row[r]) D.set(r0 + r, c0 + c, v);
        };
        for (size_t i = 0; i < src.size(); ++i) {
            int d = src[i];
            if (d >= 1) place(viewB(d), offTgt[i], offSrc[i]); // b stays in column i
            if (i >= 1) place(viewConnes(d), offTgt[i - 1], offSrc[i]); // B shifts left
        }
        totD.push_back(std::move(D));
    }
    ChainComplex C;
    C.ring = ring_;
    if (dir_ == Direction::Cyclic) {
        C.shift = -1;
        C.dims = std::move(totDims);
        C.d = std::move(totD);
    } else {
        C.shift = 1;
        C.dims = std::move(totDims);
        for (int n = 0; n <= m; ++n)
            C.d.push_back(n == m ? SparseMat::zero(ring_, 0, C.dims[m])
                                 : totD[n + 1].transposed());
    }
    return C;
}

HomologyReport homology(const ChainComplex& C, int lo, int hi) {
    HomologyReport rep;
    rep.ring = C.ring;
    bool series = C.ring.kind == RingKind::Series;
    Ring workRing = series ? Ring::rationals() : C.ring;
    auto zeroMat = [&](int cols) { return SparseMat::zero(C.ring, 0, cols); };
    for (int n = lo; n <= hi; ++n) {
        if (n < 0 || n > C.top()) throw WindowTooSmallError(
            "degree " + std::to_string(n) + " outside the realized complex");
        SparseMat out = C.d.at(n);
        SparseMat in = zeroMat(C.dims[n]);
        int inSrc = n - C.shift;
        if (inSrc >= 0) {
            if (inSrc > C.top())
                throw WindowTooSmallError("degree " + std::to_string(n) +
                                          " needs the differential from degree " +
                                          std::to_string(inSrc));
            in = C.d.at(inSrc);
        }
        DegreeHomology row;
        row.degree = n;
        if (series) {
            for (int v : seriesElementaryDivisors(in))
                if (v > 0) row.torsion.push_back(v);
            out = expandSeries(out);
            in = expandSeries(in);
        }
        int dimN = series ? C.dims[n] * C.ring.param : C.dims[n];
        std::vector<SparseVec> kernel = kernelBasis(out);
        std::vector<SparseVec> image = matColumns(in);
        row.kernelDim = static_cast<int>(kernel.size());
        row.imageDim = rank(in);
        row.homologyDim = row.kernelDim - row.imageDim;
        std::vector<SparseVec> span = image;
        Echelon E = echelonFromRows(workRing, dimN, span);
        for (const SparseVec& v : kernel) {
            if (static_cast<int>(row.representatives.size()) == row.homologyDim) break;
            if (E.inRowSpace(v)) continue;
            row.representatives.push_back(v);
            span.push_back(v);
            E = echelonFromRows(workRing, dimN, span);
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

std::string HomologyReport::str() const {
    std::ostringstream os;
    for (const auto& r : rows) {
        os << "degree " << r.degree << ": kernel " << r.kernelDim << ", image "
           << r.imageDim << ", homology " << r.homologyDim;
        if (!r.torsion.empty()) {
            os << ", torsion";
            for (int v : r.torsion) os << " h^" << v;
        }
        os << "\n";
    }
    return os.str();
}

std::string HomologyReport::tsv() const {
    std::ostringstream os;
    os << "degree\tkernel\timage\thomology\n";
    for (const auto& r : rows)
        os << r.degree << "\t" << r.kernelDim << "\t" << r.imageDim << "\t"
           << r.homologyDim << "\n";
    return os.str();
}

ParaCyclicObject pointObject(Ring ring, Direction dir, int cap) {
    ParaCyclicObject X(ring, dir);
    SparseMat one = SparseMat::identity(ring, 1);
    for (int n = 0; n <= cap; ++n) X.setDegree(n, 1);
    for (int n = 0; n <= cap; ++n) {
        X.setCyclic(n, one);
        if (n >= 1)
            for (int i = 0; i <= n; ++i) X.setFace(n, i, one);
        if (n + 1 <= cap)
            for (int j = 0; j <= n; ++j) X.setDegeneracy(n, j, one);
    }
    return X;
}

ParaCyclicObject cyclicObjectOfAlgebra(Ring ring,
                                       const std::vector<std::vector<SparseVec>>& mult,
                                       const SparseVec& unit, int cap) {
    int D = static_cast<int>(mult.size());
    auto tupleDim = [&](int n) {
        int d = 1;
        for (int k = 0; k <= n; ++k) d *= D;
        return d;
    };
    auto decode = [&](int idx, int n) {
        std::vector<int> t(n + 1);
        for (int k = n; k >= 0; --k) {
            t[k] = idx % D;
            idx /= D;
        }
        return t;
    };
    auto encode = [&](const std::vector<int>& t) {
        int idx = 0;
        for (int v : t) idx = idx * D + v;
        return idx;
    };
    ParaCyclicObject X(ring, Direction::Cyclic);
    for (int n = 0; n <= cap; ++n) X.setDegree(n, tupleDim(n));
    for (int n = 0; n <= cap; ++n) {
        // faces: multiply adjacent slots (cyclically for d_n)
        if (n >= 1)
            for (int i = 0; i <= n; ++i) {
                SparseMat m = SparseMat::zero(ring, tupleDim(n - 1), tupleDim(n));
                for (int idx = 0; idx < tupleDim(n); ++idx) {
                    auto t = decode(idx, n);
                    int a = (i < n) ? t[i] : t[n];
                    int b = (i < n) ? t[i + 1] : t[0];
                    std::vector<int> base;
                    if (i < n) {
                        base = t;
                        base.erase(base.begin() + i + 1);
                    } else {
                        base.assign(t.begin(), t.end() - 1);
                    }
                    int slot = (i < n) ? i : 0;
                    for (const auto& [k, c] : mult[a][b]) {
                        auto u = base;
                        u[slot] = k;
                        m.set(encode(u), idx, m.get(encode(u), idx) + c);
                    }
                }
                X.setFace(n, i, std::move(m));
            }
        // degeneracies: insert the unit after slot j
        if (n + 1 <= cap)
            for (int j = 0; j <= n; ++j) {
                SparseMat m = SparseMat::zero(ring, tupleDim(n + 1), tupleDim(n));
                for (int idx = 0; idx < tupleDim(n); ++idx) {
                    auto t = decode(idx, n);
                    for (const auto& [k, c] : unit) {
                        auto u = t;
                        u.insert(u.begin() + j + 1, k);
                        m.set(encode(u), idx, m.get(encode(u), idx) + c);
                    }
                }
                X.setDegeneracy(n, j, std::move(m));
            }
        // rotation: last slot to the front
        SparseMat t = SparseMat::zero(ring, tupleDim(n), tupleDim(n));
        for (int idx = 0; idx < tupleDim(n); ++idx) {
            auto v = decode(idx, n);
            std::rotate(v.begin(), v.end() - 1, v.end());
            t.set(encode(v), idx, Scalar::one(ring));
        }
        X.setCyclic(n, std::move(t));
    }
    return X;
}

} // namespace hopfcyc

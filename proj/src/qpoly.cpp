#include "hopfcyc/qpoly.hpp"

#include "hopfcyc/errors.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace hopfcyc {

QPoly::QPoly(const mpq_class& c) {
    if (c != 0) c_.push_back(c);
}

QPoly QPoly::monomial(int deg, const mpq_class& c) {
    QPoly p;
    if (c == 0) return p;
    p.c_.assign(deg + 1, mpq_class(0));
    p.c_[deg] = c;
    return p;
}

const mpq_class& QPoly::coeff(int i) const {
    static const mpq_class zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[i];
}

const mpq_class& QPoly::leading() const {
    static const mpq_class zero(0);
    if (c_.empty()) return zero;
    return c_.back();
}

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::operator+(const QPoly& o) const {
    QPoly r;
    r.c_.resize(std::max(c_.size(), o.c_.size()), mpq_class(0));
    for (size_t i = 0; i < r.c_.size(); ++i) {
        if (i < c_.size()) r.c_[i] += c_[i];
        if (i < o.c_.size()) r.c_[i] += o.c_[i];
    }
    r.trim();
    return r;
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator-() const {
    QPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

QPoly QPoly::operator*(const QPoly& o) const {
    QPoly r;
    if (isZero() || o.isZero()) return r;
    r.c_.assign(c_.size() + o.c_.size() - 1, mpq_class(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            if (o.c_[j] != 0) r.c_[i + j] += c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

void QPoly::divmod(const QPoly& n, const QPoly& d, QPoly& q, QPoly& r) {
    if (d.isZero()) throw NotInvertibleError("polynomial division by zero");
    q = QPoly();
    r = n;
    while (!r.isZero() && r.degree() >= d.degree()) {
        int shift = r.degree() - d.degree();
        mpq_class c = r.leading() / d.leading();
        QPoly t = QPoly::monomial(shift, c);
        q = q + t;
        r = r - t * d;
    }
}

QPoly QPoly::mod(const QPoly& d) const {
    QPoly q, r;
    divmod(*this, d, q, r);
    return r;
}

QPoly QPoly::div(const QPoly& d) const {
    QPoly q, r;
    divmod(*this, d, q, r);
    return q;
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
    while (!b.isZero()) {
        QPoly r = a.mod(b);
        a = b;
        b = r;
    }
    return a.makeMonic();
}

QPoly QPoly::makeMonic() const {
    if (isZero()) return *this;
    return scaled(mpq_class(1) / leading());
}

QPoly QPoly::scaled(const mpq_class& c) const {
    if (c == 0) return QPoly();
    QPoly r = *this;
    for (auto& x : r.c_) x *= c;
    return r;
}

const QPoly& QPoly::cyclotomic(int n) {
    static std::map<int, QPoly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, filled for divisors of n
    // in increasing order so every needed Phi_d is already present.
    for (int m = 1; m <= n; ++m) {
        if (n % m != 0 || cache.count(m)) continue;
        QPoly num = QPoly::monomial(m, 1) - QPoly(mpq_class(1));
        for (int d = 1; d < m; ++d)
            if (m % d == 0) num = num.div(cache.at(d));
        cache.emplace(m, num);
    }
    return cache.at(n);
}

std::string QPoly::str(const std::string& var) const {
    if (isZero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpq_class& c = c_[i];
        if (c == 0) continue;
        mpq_class a = abs(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool unitCoeff = (a == 1) && i > 0;
        if (!unitCoeff) out << a.get_str();
        if (i > 0) {
            if (!unitCoeff) out << "*";
            out << var;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

} // namespace hopfcyc

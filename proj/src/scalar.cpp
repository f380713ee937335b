#include "hopfcyc/scalar.hpp"

#include "hopfcyc/errors.hpp"

#include <cctype>
#include <sstream>

namespace hopfcyc {

std::string Ring::name() const {
    switch (kind) {
    case RingKind::Rationals: return "Q";
    case RingKind::FunctionField: return "Q(q)";
    case RingKind::Cyclotomic: return "Q[z]/Phi_" + std::to_string(param);
    case RingKind::Series: return "Q[h]/h^" + std::to_string(param);
    }
    return "?";
}

const char* Ring::variable() const {
    switch (kind) {
    case RingKind::Rationals: return "";
    case RingKind::FunctionField: return "q";
    case RingKind::Cyclotomic: return "z";
    case RingKind::Series: return "h";
    }
    return "";
}

Ring Ring::parse(const std::string& name) {
    if (name == "Q") return rationals();
    if (name == "Q(q)") return functionField();
    auto starts = [&](const std::string& p) { return name.rfind(p, 0) == 0; };
    if (starts("Q[z]/Phi_")) return cyclotomic(std::stoi(name.substr(9)));
    if (starts("Q[h]/h^")) return series(std::stoi(name.substr(7)));
    throw ParseError("unknown ring name: " + name);
}

Scalar::Scalar(Ring ring, const mpq_class& c) : ring_(ring), num_(c) {}

Scalar Scalar::fromFraction(Ring ring, QPoly num, QPoly den) {
    Scalar s(ring);
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    s.reduce();
    return s;
}

Scalar Scalar::varPower(Ring ring, int k) {
    switch (ring.kind) {
    case RingKind::Rationals:
        throw ParseError("the rational ring has no distinguished variable");
    case RingKind::FunctionField:
        if (k >= 0) return fromFraction(ring, QPoly::monomial(k, 1), QPoly(mpq_class(1)));
        return fromFraction(ring, QPoly(mpq_class(1)), QPoly::monomial(-k, 1));
    case RingKind::Cyclotomic: {
        int n = ring.param;
        int e = ((k % n) + n) % n;
        return fromFraction(ring, QPoly::monomial(e, 1), QPoly(mpq_class(1)));
    }
    case RingKind::Series:
        if (k < 0) throw NotInvertibleError("negative power of h");
        return fromFraction(ring, QPoly::monomial(k, 1), QPoly(mpq_class(1)));
    }
    throw ParseError("bad ring");
}

Scalar Scalar::expSeries(Ring ring, const mpq_class& c) {
    if (ring.kind != RingKind::Series)
        throw MixedRingError("expSeries needs a truncated series ring");
    QPoly p;
    mpq_class term(1);
    for (int k = 0; k < ring.param; ++k) {
        if (k > 0) term = term * c / k;
        p = p + QPoly::monomial(k, term);
    }
    return fromFraction(ring, p, QPoly(mpq_class(1)));
}

bool Scalar::isOne() const {
    return num_.degree() == 0 && num_.coeff(0) == 1 && den_.degree() == 0 && den_.coeff(0) == 1;
}

mpq_class Scalar::rationalValue() const {
    if (num_.degree() > 0 || den_.degree() > 0)
        throw Error("scalar is not a constant: " + str());
    if (den_.isZero()) throw NotInvertibleError("zero denominator");
    if (num_.isZero()) return 0;
    return num_.coeff(0) / den_.coeff(0);
}

void Scalar::checkRing(const Scalar& o) const {
    if (!(ring_ == o.ring_))
        throw MixedRingError(ring_.name() + " vs " + o.ring_.name());
}

namespace {

// Inverse of a modulo m (extended Euclid over Q[x]); a assumed nonzero mod m.
QPoly invmod(const QPoly& a, const QPoly& m) {
    // r0 = m, r1 = a; maintain r = s*m + t*a.
    QPoly r0 = m, r1 = a.mod(m);
    QPoly t0, t1 = QPoly(mpq_class(1));
    if (r1.isZero()) throw NotInvertibleError("zero element in cyclotomic field");
    while (!r1.isZero()) {
        QPoly q, r;
        QPoly::divmod(r0, r1, q, r);
        QPoly t = t0 - q * t1;
        r0 = r1; r1 = r;
        t0 = t1; t1 = t;
    }
    if (r0.degree() != 0)
        throw NotInvertibleError("non-unit modulo cyclotomic polynomial");
    return t0.scaled(mpq_class(1) / r0.coeff(0)).mod(m);
}

// Inverse of a unit in Q[h]/(h^N).
QPoly seriesInv(const QPoly& a, int N) {
    if (a.coeff(0) == 0) throw NotInvertibleError("zero constant term in truncated series");
    std::vector<mpq_class> inv(N, mpq_class(0));
    inv[0] = mpq_class(1) / a.coeff(0);
    for (int k = 1; k < N; ++k) {
        mpq_class acc(0);
        for (int j = 1; j <= k; ++j) acc += a.coeff(j) * inv[k - j];
        inv[k] = -acc / a.coeff(0);
    }
    QPoly r;
    r.raw() = std::move(inv);
    r.trim();
    return r;
}

QPoly truncate(const QPoly& p, int N) {
    QPoly r = p;
    if (static_cast<int>(r.raw().size()) > N) r.raw().resize(N);
    r.trim();
    return r;
}

} // namespace

void Scalar::reduce() {
    if (den_.isZero()) throw NotInvertibleError("zero denominator");
    switch (ring_.kind) {
    case RingKind::Rationals: {
        if (num_.degree() > 0 || den_.degree() > 0)
            throw ParseError("non-constant value over Q");
        if (!num_.isZero()) num_ = QPoly(num_.coeff(0) / den_.coeff(0));
        den_ = QPoly(mpq_class(1));
        break;
    }
    case RingKind::FunctionField: {
        if (num_.isZero()) {
            den_ = QPoly(mpq_class(1));
            break;
        }
        QPoly g = QPoly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_.div(g);
            den_ = den_.div(g);
        }
        mpq_class lc = den_.leading();
        den_ = den_.scaled(mpq_class(1) / lc);
        num_ = num_.scaled(mpq_class(1) / lc);
        break;
    }
    case RingKind::Cyclotomic: {
        const QPoly& phi = QPoly::cyclotomic(ring_.param);
        num_ = num_.mod(phi);
        if (den_.degree() > 0 || den_.coeff(0) != 1) {
            QPoly dinv = invmod(den_, phi);
            num_ = (num_ * dinv).mod(phi);
            den_ = QPoly(mpq_class(1));
        }
        break;
    }
    case RingKind::Series: {
        int N = ring_.param;
        num_ = truncate(num_, N);
        if (den_.degree() > 0 || den_.coeff(0) != 1) {
            num_ = truncate(num_ * seriesInv(truncate(den_, N), N), N);
            den_ = QPoly(mpq_class(1));
        }
        break;
    }
    }
}

Scalar Scalar::operator+(const Scalar& o) const {
    checkRing(o);
    Scalar r(ring_);
    r.num_ = num_ * o.den_ + o.num_ * den_;
    r.den_ = den_ * o.den_;
    r.reduce();
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    checkRing(o);
    Scalar r(ring_);
    r.num_ = num_ * o.num_;
    r.den_ = den_ * o.den_;
    r.reduce();
    return r;
}

bool Scalar::operator==(const Scalar& o) const {
    checkRing(o);
    return num_ == o.num_ && den_ == o.den_;
}

bool Scalar::invertible() const {
    if (isZero()) return false;
    if (ring_.kind == RingKind::Series) return num_.coeff(0) != 0;
    return true;
}

Scalar Scalar::inverse() const {
    if (isZero()) throw NotInvertibleError("zero in " + ring_.name());
    Scalar r(ring_);
    switch (ring_.kind) {
    case RingKind::Rationals:
    case RingKind::FunctionField:
        r.num_ = den_;
        r.den_ = num_;
        break;
    case RingKind::Cyclotomic:
        r.num_ = invmod(num_, QPoly::cyclotomic(ring_.param));
        r.den_ = QPoly(mpq_class(1));
        break;
    case RingKind::Series:
        r.num_ = seriesInv(num_, ring_.param);
        r.den_ = QPoly(mpq_class(1));
        break;
    }
    r.reduce();
    return r;
}

Scalar Scalar::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    Scalar acc = Scalar::one(ring_);
    Scalar base = *this;
    while (k > 0) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

Scalar Scalar::modH() const {
    if (ring_.kind != RingKind::Series)
        throw MixedRingError("modH needs a truncated series ring");
    return Scalar(Ring::rationals(), num_.coeff(0));
}

int Scalar::hValuation() const {
    if (ring_.kind != RingKind::Series)
        throw MixedRingError("hValuation needs a truncated series ring");
    if (isZero()) return ring_.param;
    int k = 0;
    while (num_.coeff(k) == 0) ++k;
    return k;
}

std::string Scalar::str() const {
    switch (ring_.kind) {
    case RingKind::Rationals:
        return isZero() ? "0" : num_.coeff(0).get_str();
    case RingKind::FunctionField: {
        std::string n = num_.str("q");
        if (den_.degree() == 0) return n;
        return "(" + n + ")/(" + den_.str("q") + ")";
    }
    case RingKind::Cyclotomic:
        return num_.str("z");
    case RingKind::Series: {
        std::ostringstream out;
        out << "[";
        for (int i = 0; i < ring_.param; ++i) {
            if (i) out << ", ";
            out << num_.coeff(i).get_str();
        }
        out << "]";
        return out.str();
    }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Parser for the canonical scalar syntax: integers, the ring variable,
// + - * / ^ ( ), and the series coefficient-list form [c0, c1, ...].

namespace {

struct ScalarParser {
    Ring ring;
    const std::string& s;
    size_t pos = 0;

    void skipWs() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek(char c) {
        skipWs();
        return pos < s.size() && s[pos] == c;
    }
    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) throw ParseError("expected '" + std::string(1, c) + "' in scalar: " + s);
    }

    long integer() {
        skipWs();
        bool neg = accept('-');
        skipWs();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer in scalar: " + s);
        long v = std::stol(s.substr(start, pos - start));
        return neg ? -v : v;
    }

    Scalar atom() {
        skipWs();
        if (pos >= s.size()) throw ParseError("unexpected end of scalar: " + s);
        if (accept('(')) {
            Scalar v = expr();
            expect(')');
            return v;
        }
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return Scalar(ring, mpq_class(integer()));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string var(1, c);
            if (var != ring.variable())
                throw ParseError("unknown symbol '" + var + "' over " + ring.name());
            ++pos;
            return Scalar::varPower(ring, 1);
        }
        throw ParseError("bad character in scalar: " + s);
    }

    Scalar factor() {
        skipWs();
        if (accept('-')) return -factor();
        Scalar base = atom();
        if (accept('^')) {
            long e = 0;
            if (accept('(')) {
                e = integer();
                expect(')');
            } else {
                e = integer();
            }
            return base.pow(static_cast<int>(e));
        }
        return base;
    }

    Scalar term() {
        Scalar v = factor();
        for (;;) {
            if (accept('*')) v = v * factor();
            else if (accept('/')) v = v / factor();
            else break;
        }
        return v;
    }

    Scalar expr() {
        Scalar v = term();
        for (;;) {
            skipWs();
            if (accept('+')) v = v + term();
            else if (peek('-')) v = v + term(); // unary minus inside term
            else break;
        }
        return v;
    }

    Scalar seriesList() {
        expect('[');
        QPoly p;
        int i = 0;
        if (!peek(']')) {
            for (;;) {
                long a = integer();
                long b = 1;
                if (accept('/')) b = integer();
                p = p + QPoly::monomial(i, mpq_class(a, b));
                ++i;
                if (!accept(',')) break;
            }
        }
        expect(']');
        return Scalar::fromFraction(ring, p, QPoly(mpq_class(1)));
    }
};

} // namespace

Scalar Scalar::parse(Ring ring, const std::string& text) {
    ScalarParser p{ring, text};
    p.skipWs();
    Scalar v = (ring.kind == RingKind::Series && p.peek('[')) ? p.seriesList() : p.expr();
    p.skipWs();
    if (p.pos != text.size()) throw ParseError("trailing junk in scalar: " + text);
    return v;
}

Scalar ring_add(const Scalar& a, const Scalar& b) { return a + b; }
Scalar ring_mul(const Scalar& a, const Scalar& b) { return a * b; }
Scalar ring_neg(const Scalar& a) { return -a; }
Scalar ring_inv(const Scalar& a) { return a.inverse(); }

Scalar quantum_int(int n, const Scalar& base) {
    Scalar acc = Scalar::zero(base.ring());
    for (int k = 0; k < n; ++k) acc += base.pow(n - 1 - 2 * k);
    return acc;
}

Scalar quantum_factorial(int n, const Scalar& base) {
    Scalar acc = Scalar::one(base.ring());
    for (int k = 1; k <= n; ++k) acc *= quantum_int(k, base);
    return acc;
}

Scalar quantum_binomial(int n, int r, const Scalar& base) {
    if (r < 0 || r > n) throw Error("quantum_binomial needs 0 <= r <= n");
    return quantum_factorial(n, base) /
           (quantum_factorial(r, base) * quantum_factorial(n - r, base));
}

} // namespace hopfcyc

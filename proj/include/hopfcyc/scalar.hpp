#pragma once

#include "hopfcyc/qpoly.hpp"

#include <string>

namespace hopfcyc {

enum class RingKind {
    Rationals,      // Q
    FunctionField,  // Q(q)
    Cyclotomic,     // Q[z]/Phi_n(z), z a primitive n-th root of unity
    Series,         // Q[h]/(h^N)
};

struct Ring {
    RingKind kind = RingKind::Rationals;
    int param = 0; // n for Cyclotomic, N for Series

    static Ring rationals() { return {RingKind::Rationals, 0}; }
    static Ring functionField() { return {RingKind::FunctionField, 0}; }
    static Ring cyclotomic(int n) { return {RingKind::Cyclotomic, n}; }
    static Ring series(int N) { return {RingKind::Series, N}; }

    bool operator==(const Ring&) const = default;
    bool isField() const { return kind != RingKind::Series; }
    std::string name() const;
    const char* variable() const; // "q", "z", "h" or "" for Q
    static Ring parse(const std::string& name);
};

// Exact element of one of the four coefficient rings, always held in
// canonical form:
//  - Rationals/Cyclotomic/Series: den == 1, num reduced/truncated;
//  - FunctionField: gcd(num, den) == 1 and den monic.
class Scalar {
public:
    Scalar() = default; // zero over Q
    explicit Scalar(Ring ring) : ring_(ring) {}
    Scalar(Ring ring, const mpq_class& c);
    static Scalar fromInt(Ring ring, long v) { return Scalar(ring, mpq_class(v)); }
    static Scalar zero(Ring ring) { return Scalar(ring); }
    static Scalar one(Ring ring) { return Scalar(ring, 1); }
    // q^k / z^k / h^k (k >= 0 outside the function field).
    static Scalar varPower(Ring ring, int k);
    // Truncated exp(c*h) in a series ring.
    static Scalar expSeries(Ring ring, const mpq_class& c);
    static Scalar fromFraction(Ring ring, QPoly num, QPoly den);

    const Ring& ring() const { return ring_; }
    bool isZero() const { return num_.isZero(); }
    bool isOne() const;
    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }
    // Constant (degree-0) value; throws if not constant.
    mpq_class rationalValue() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator-() const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    bool operator==(const Scalar& o) const;
    bool invertible() const;
    Scalar inverse() const;
    Scalar pow(int k) const;

    // Series-ring helpers.
    Scalar modH() const;        // constant term, reinterpreted over Q
    int hValuation() const;     // largest k with h^k | x (N for 0)

    std::string str() const;
    static Scalar parse(Ring ring, const std::string& text);

private:
    void reduce();
    void checkRing(const Scalar& o) const;

    Ring ring_ = Ring::rationals();
    QPoly num_;
    QPoly den_ = QPoly(mpq_class(1));
};

Scalar ring_add(const Scalar& a, const Scalar& b);
Scalar ring_mul(const Scalar& a, const Scalar& b);
Scalar ring_neg(const Scalar& a);
Scalar ring_inv(const Scalar& a);

// (n)_base = (base^n - base^{-n})/(base - base^{-1}) = sum base^{n-1-2k}.
Scalar quantum_int(int n, const Scalar& base);
Scalar quantum_factorial(int n, const Scalar& base);
Scalar quantum_binomial(int n, int r, const Scalar& base);

} // namespace hopfcyc

#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace hopfcyc {

// Dense univariate polynomial over Q. Coefficient i is the coefficient of x^i.
// The zero polynomial is the empty coefficient vector.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(const mpq_class& c);
    static QPoly monomial(int deg, const mpq_class& c = 1);

    bool isZero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    const mpq_class& coeff(int i) const;
    const std::vector<mpq_class>& coeffs() const { return c_; }
    const mpq_class& leading() const;

    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator-() const;
    QPoly operator*(const QPoly& o) const;
    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    // Euclidean division: *this = q*d + r with deg r < deg d.
    static void divmod(const QPoly& n, const QPoly& d, QPoly& q, QPoly& r);
    QPoly mod(const QPoly& d) const;
    QPoly div(const QPoly& d) const; // exact or truncating euclidean quotient

    static QPoly gcd(QPoly a, QPoly b); // monic gcd (0 for both zero)
    QPoly makeMonic() const;
    QPoly scaled(const mpq_class& c) const;

    // n-th cyclotomic polynomial (cached).
    static const QPoly& cyclotomic(int n);

    // Renders with the given variable name, e.g. "q^2 - 2*q + 1".
    std::string str(const std::string& var) const;

    void trim();
    std::vector<mpq_class>& raw() { return c_; }

private:
    std::vector<mpq_class> c_;
};

} // namespace hopfcyc

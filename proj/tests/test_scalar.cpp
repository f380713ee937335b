#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfcyc/errors.hpp"
#include "hopfcyc/scalar.hpp"

#include <random>

using namespace hopfcyc;

namespace {

const Ring kRings[] = {
    Ring::rationals(),
    Ring::functionField(),
    Ring::cyclotomic(3),
    Ring::cyclotomic(5),
    Ring::series(4),
};

Scalar randomScalar(Ring ring, std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> deg(0, 3);
    QPoly num;
    int d = deg(rng);
    for (int i = 0; i <= d; ++i) num = num + QPoly::monomial(i, coeff(rng));
    QPoly den;
    if (ring.kind == RingKind::FunctionField) {
        while (den.isZero()) {
            int e = deg(rng);
            for (int i = 0; i <= e; ++i) den = den + QPoly::monomial(i, coeff(rng));
        }
    } else {
        den = QPoly(mpq_class(1));
        if (ring.kind == RingKind::Rationals && num.degree() > 0)
            num = QPoly(num.coeff(0));
    }
    return Scalar::fromFraction(ring, num, den);
}

} // namespace

TEST_CASE("basic ring arithmetic identities") {
    Ring qq = Ring::functionField();
    Scalar q = Scalar::varPower(qq, 1);
    Scalar qinv = Scalar::varPower(qq, -1);

    // (q - q^-1) + (q^-1 - q) = 0
    CHECK(((q - qinv) + (qinv - q)).isZero());

    // in Q[h]/(h^3): h^2 * h = 0
    Ring s3 = Ring::series(3);
    Scalar h = Scalar::varPower(s3, 1);
    CHECK((h.pow(2) * h).isZero());

    // (2)_q * (q - q^-1) = q^2 - q^-2
    Scalar two_q = quantum_int(2, q);
    CHECK(two_q * (q - qinv) == q.pow(2) - q.pow(-2));
}

TEST_CASE("inverses") {
    Ring qq = Ring::functionField();
    Scalar q = Scalar::varPower(qq, 1);
    Scalar x = q - q.pow(-1);
    // inv(q - q^-1) = q/(q^2 - 1)
    Scalar expect = q / (q.pow(2) - Scalar::one(qq));
    CHECK(x.inverse() == expect);
    CHECK(x * x.inverse() == Scalar::one(qq));
    CHECK(x.inverse().str() == "(q)/(q^2 - 1)");

    Ring s2 = Ring::series(2);
    Scalar h = Scalar::varPower(s2, 1);
    Scalar oneph = Scalar::one(s2) + h;
    CHECK(oneph.inverse() == Scalar::one(s2) - h);
    CHECK_THROWS_AS(h.inverse(), NotInvertibleError);
    CHECK_THROWS_AS(Scalar::zero(qq).inverse(), NotInvertibleError);
}

TEST_CASE("mixed rings rejected") {
    Scalar a = Scalar::one(Ring::rationals());
    Scalar b = Scalar::one(Ring::functionField());
    CHECK_THROWS_AS(a + b, MixedRingError);
    CHECK_THROWS_AS(a * b, MixedRingError);
}

TEST_CASE("quantum binomials") {
    Ring qq = Ring::functionField();
    Scalar q = Scalar::varPower(qq, 1);
    CHECK(quantum_binomial(2, 1, q) == q + q.pow(-1));
    CHECK(quantum_binomial(5, 0, q) == Scalar::one(qq));
    CHECK(quantum_binomial(3, 1, q) == q.pow(2) + Scalar::one(qq) + q.pow(-2));
    for (int n = 0; n <= 6; ++n)
        for (int r = 0; r <= n; ++r)
            CHECK(quantum_binomial(n, r, q) == quantum_binomial(n, n - r, q));
    // at a primitive root of unity
    Ring c5 = Ring::cyclotomic(5);
    Scalar z = Scalar::varPower(c5, 1);
    CHECK(quantum_binomial(2, 1, z) == z + z.pow(-1));
    CHECK(z.pow(5) == Scalar::one(c5));
}

TEST_CASE("field axioms on random elements") {
    std::mt19937 rng(20240817);
    for (const Ring& ring : kRings) {
        for (int trial = 0; trial < 50; ++trial) {
            Scalar a = randomScalar(ring, rng);
            Scalar b = randomScalar(ring, rng);
            Scalar c = randomScalar(ring, rng);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a - a).isZero());
            if (a.invertible()) CHECK(a * a.inverse() == Scalar::one(ring));
            if (ring.isField() && !a.isZero()) CHECK(a.invertible());
        }
    }
}

TEST_CASE("canonical serialization round-trips") {
    std::mt19937 rng(991);
    for (const Ring& ring : kRings) {
        for (int trial = 0; trial < 40; ++trial) {
            Scalar a = randomScalar(ring, rng);
            Scalar back = Scalar::parse(ring, a.str());
            CHECK(back == a);
            CHECK(back.str() == a.str());
        }
    }
    // equal elements serialize identically even from distinct expressions
    Ring qq = Ring::functionField();
    Scalar x = Scalar::parse(qq, "(q^2 - 1)/(q - 1)");
    Scalar y = Scalar::parse(qq, "q + 1");
    CHECK(x == y);
    CHECK(x.str() == y.str());
}

TEST_CASE("series helpers") {
    Ring s4 = Ring::series(4);
    Scalar eh = Scalar::expSeries(s4, 1);
    Scalar emh = Scalar::expSeries(s4, -1);
    CHECK(eh * emh == Scalar::one(s4));
    CHECK(eh.str() == "[1, 1, 1/2, 1/6]");
    CHECK(eh.modH() == Scalar::one(Ring::rationals()));
    Scalar h = Scalar::varPower(s4, 1);
    CHECK((h * h).hValuation() == 2);
    CHECK(Scalar::zero(s4).hValuation() == 4);
}

TEST_CASE("ring names round-trip") {
    for (const Ring& ring : kRings) CHECK(Ring::parse(ring.name()) == ring);
}

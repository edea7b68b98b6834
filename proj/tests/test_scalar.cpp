#include "doctest.h"

#include "twistlab/scalar.hpp"

using namespace twistlab;

TEST_CASE("rational arithmetic is exact") {
    FieldSpec q = FieldSpec::rational();
    Scalar a = scalar_parse("2/3", q);
    Scalar b = scalar_parse("-5/7", q);
    CHECK((a + b).str() == "-1/21");
    CHECK((a * b).str() == "-10/21");
    CHECK((a - a).is_zero());
    CHECK((a * a.inv()).is_one());
    CHECK(a.is_rational());
    CHECK(a.rational_value() == mpq_class(2, 3));
    CHECK(Scalar::from_rational(q, mpq_class(6, 4)).str() == "3/2");
}

TEST_CASE("division by zero throws") {
    FieldSpec q = FieldSpec::rational();
    CHECK_THROWS_AS(Scalar::zero(q).inv(), DivisionByZero);
}

TEST_CASE("cyclotomic field Q(zeta_4)") {
    FieldSpec f = FieldSpec::cyclotomic(4);
    CHECK(f.degree() == 2);
    Scalar z = Scalar::root_power(f, 1);
    CHECK((z * z).str() == "-1");           // zeta_4^2 = -1 mod Phi_4
    CHECK((z * z * z * z).is_one());
    Scalar w = Scalar::one(f) + z;
    CHECK((w * w.inv()).is_one());
    CHECK(!z.is_rational());
}

TEST_CASE("cyclotomic field Q(zeta_6) uses Phi_6 of degree 2") {
    FieldSpec f = FieldSpec::cyclotomic(6);
    CHECK(f.degree() == 2);
    Scalar z = Scalar::root_power(f, 1);
    Scalar s = Scalar::zero(f);
    for (int k = 0; k < 6; ++k) s = s + Scalar::root_power(f, k);
    CHECK(s.is_zero());  // sum of all 6th roots of unity
    CHECK(Scalar::root_power(f, 7) == z);
}

TEST_CASE("parse / str round trip") {
    FieldSpec f = FieldSpec::cyclotomic(3);
    for (const char* s : {"0", "1", "-7/3", "z", "z^2", "1/2 + 3*z", "-z + 2"}) {
        Scalar a = scalar_parse(s, f);
        CHECK(scalar_parse(a.str(), f) == a);
    }
    CHECK_THROWS_AS(scalar_parse("z", FieldSpec::rational()), ParseError);
    CHECK_THROWS_AS(scalar_parse("bogus", f), ParseError);
}

TEST_CASE("fields of different kinds do not mix") {
    Scalar a = Scalar::one(FieldSpec::rational());
    Scalar b = Scalar::root_power(FieldSpec::cyclotomic(5), 1);
    CHECK_THROWS(a + b);
}

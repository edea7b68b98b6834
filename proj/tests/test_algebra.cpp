#include "doctest.h"

#include "support.hpp"
#include "twistlab/algebra.hpp"
#include "twistlab/examples.hpp"

using namespace twistlab;

TEST_CASE("fixtures pass the full bialgebra validator") {
    for (const PresPtr& p : {examples::sweedler_presentation(),
                             examples::group_algebra({2}, FieldSpec::rational()),
                             examples::group_algebra({2, 2}, FieldSpec::rational()),
                             examples::group_algebra({3}, FieldSpec::cyclotomic(3)),
                             base_field_presentation(FieldSpec::rational())}) {
        ValidationReport rep = validate_bialgebra(p);
        CHECK_MESSAGE(rep.ok(), rep.first_failure());
    }
}

TEST_CASE("a broken coproduct is caught with a residual") {
    PresPtr h = examples::sweedler_presentation();
    auto bad = std::make_shared<BialgebraPresentation>(*h);
    bad->comult[2].clear();  // Delta(x) := 0 breaks counitality
    ValidationReport rep = validate_bialgebra(bad);
    CHECK(!rep.ok());
    CHECK(!rep.first_failure().empty());
}

TEST_CASE("tensor product bialgebra") {
    PresPtr a = examples::sweedler_presentation();
    PresPtr b = examples::group_algebra({2}, FieldSpec::rational());
    PresPtr p = tensor_bialgebra(a, b);
    CHECK(p->dim == 8);
    CHECK(validate_bialgebra(p).ok());
    REQUIRE(p->tensor_factors.has_value());
    CHECK(same_presentation(p->tensor_factors->first, a));
    CHECK(same_presentation(p->tensor_factors->second, b));
}

TEST_CASE("element product, inverse, and unit") {
    auto rng = testing::make_rng(1);
    PresPtr h = examples::sweedler_presentation();
    TensorElement u = testing::random_counital_unit(h, rng);
    TensorElement v = elem_inv(u);
    CHECK(elem_mul(u, v) == unit_element(h));
    CHECK(elem_mul(v, u) == unit_element(h));
    TensorElement x = basis_element(h, 2);
    CHECK(elem_mul(x, x).is_zero());  // x^2 = 0
}

TEST_CASE("leg calculus identities") {
    auto rng = testing::make_rng(2);
    PresPtr h = examples::group_algebra({2, 3}, FieldSpec::rational());
    TensorElement u = testing::random_counital_unit(h, rng);
    TensorElement t = outer(u, elem_inv(u));

    CHECK(leg_flip(leg_flip(t, 1, 2), 1, 2) == t);
    // (eps (x) Id) after Delta on a leg is the identity.
    CHECK(leg_counit(leg_comult(t, 1), {1}).retag({h, h}) == t);
    CHECK(leg_counit(leg_comult(t, 2), {3}).retag({h, h}) == t);
    // Coassociativity on leg 1.
    CHECK(leg_comult(leg_comult(t, 1), 1) == leg_comult(leg_comult(t, 1), 2));
    // Embedding into 3 legs then removing the inserted leg by counit.
    CHECK(leg_counit(leg_embed(t, 3, {1, 3}), {2}).retag({h, h}) == t);
    // split/fuse round trip.
    PresPtr p2 = tensor_bialgebra(h, h);
    TensorElement fused = fuse_legs(t, 1, p2);
    CHECK(split_leg(fused, 1).retag({h, h}) == t);
}

TEST_CASE("linear maps compose and invert") {
    PresPtr h = examples::sweedler_presentation();
    LinearMap f = examples::sweedler_morphism(h, Scalar::from_int(h->field, 2));
    LinearMap g = f.inverse();
    LinearMap id = LinearMap::identity(h);
    CHECK(f.compose(g).matrix == id.matrix);
    for (int i = 0; i < h->dim; ++i) {
        TensorElement b = basis_element(h, i);
        CHECK(g.apply1(f.apply1(b)) == b);
    }
}

TEST_CASE("is_central detects the center") {
    PresPtr h = examples::sweedler_presentation();
    CHECK(is_central(unit_element(h)));
    CHECK(!is_central(basis_element(h, 1)));  // g is not central in H4
    PresPtr c = examples::group_algebra({2, 2}, FieldSpec::rational());
    CHECK(is_central(basis_element(c, 3)));   // commutative algebra
}

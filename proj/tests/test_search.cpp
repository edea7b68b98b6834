#include "doctest.h"

#include "twistlab/examples.hpp"
#include "twistlab/search.hpp"

using namespace twistlab;

// The quadratic solver works over tensor-element unknowns; a convenient
// 1-dimensional carrier is the base field bialgebra, where an arity-1
// unknown is a single scalar x.
namespace {

PresPtr scalar_carrier() { return base_field_presentation(FieldSpec::rational()); }

TensorElement conster(const PresPtr& p, const char* v) {
    return unit_element(p).scaled(scalar_parse(v, p->field));
}

}  // namespace

TEST_CASE("x^2 = x has exactly the roots 0 and 1") {
    PresPtr p = scalar_carrier();
    // residual lin(x) - bil(x,x) = x - x^2.
    search::QuadResidual q{[](const TensorElement& t) { return t; },
                           [](const TensorElement& a, const TensorElement& b) {
                               return elem_mul(a, b);
                           }};
    auto out = search::solve_quadratic_system({p}, {}, {q}, 4, search::default_grid(p->field));
    CHECK(out.linear_consistent);
    CHECK(!out.family);
    REQUIRE(out.candidates.size() == 2);
    CHECK(out.candidates[0].is_zero());
    CHECK(out.candidates[1] == unit_element(p));
}

TEST_CASE("x^2 = 2 is reported as having no rational root") {
    PresPtr p = scalar_carrier();
    search::QuadResidual q{[&](const TensorElement&) { return conster(p, "2"); },
                           [](const TensorElement& a, const TensorElement& b) {
                               return elem_mul(a, b);
                           }};
    auto out = search::solve_quadratic_system({p}, {}, {q}, 4, search::default_grid(p->field));
    CHECK(out.linear_consistent);
    CHECK(out.candidates.empty());
}

TEST_CASE("inconsistent linear constraints are flagged") {
    PresPtr p = scalar_carrier();
    // x = 1 and x = 2 simultaneously.
    search::LinearConstraint c1{[](const TensorElement& t) { return t; },
                                conster(scalar_carrier(), "1")};
    search::LinearConstraint c2{[](const TensorElement& t) { return t; },
                                conster(scalar_carrier(), "2")};
    auto out = search::solve_quadratic_system({p}, {c1, c2}, {}, 4, search::default_grid(p->field));
    CHECK(!out.linear_consistent);
    CHECK(out.candidates.empty());
}

TEST_CASE("identically vanishing residual certifies a family") {
    PresPtr p = scalar_carrier();
    // residual x - x = 0 for every x: the whole line is a solution family.
    search::QuadResidual q{[](const TensorElement& t) { return t - t; },
                           [&](const TensorElement&, const TensorElement&) {
                               return TensorElement({scalar_carrier()});
                           }};
    auto out = search::solve_quadratic_system({p}, {}, {q}, 4, search::default_grid(p->field));
    CHECK(out.family);
    CHECK(out.affine_dim == 1);
    CHECK(!out.candidates.empty());
}

TEST_CASE("ansatz dimension cap throws") {
    PresPtr h = examples::sweedler_presentation();
    CHECK_THROWS_AS(search::solve_quadratic_system({h, h}, {}, {}, 16, {},
                                                   5'000'000, 2),
                    search::CapExceeded);
}

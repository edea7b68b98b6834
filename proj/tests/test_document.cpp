#include "doctest.h"

#include "twistlab/document.hpp"
#include "twistlab/examples.hpp"

using namespace twistlab;

static Scalar q(const char* s) { return scalar_parse(s, FieldSpec::rational()); }

TEST_CASE("emit / parse round trip is the identity on documents") {
    PresPtr h = examples::sweedler_presentation();
    doc::Document d = doc::document_of(
        h, {{"R", examples::sweedler_rmatrix(h, q("2")).element},
            {"F", examples::sweedler_twist(h, q("1")).element}});
    d.morphisms["f"] =
        doc::MorphismData{"self", examples::sweedler_morphism(h, q("2")).matrix, "F"};
    std::string text = doc::emit_document(d);
    doc::Document back = doc::parse_document(text);
    CHECK(back.pres->structurally_equal(*h));
    CHECK(back.element_over("R", {back.pres, back.pres}) ==
          d.element_over("R", {back.pres, back.pres}));
    CHECK(back.morphisms.at("f").target == "self");
    CHECK(back.morphisms.at("f").twist == "F");
    // Canonical form: emitting the parse is a fixed point.
    CHECK(doc::emit_document(back) == text);
}

TEST_CASE("cyclotomic scalars survive the round trip") {
    PresPtr p = examples::group_algebra({3}, FieldSpec::cyclotomic(3));
    doc::Document d = doc::document_of(
        p, {{"e", basis_element(p, 1).scaled(Scalar::root_power(p->field, 2))}});
    doc::Document back = doc::parse_document(doc::emit_document(d));
    CHECK(back.element_over("e", {back.pres}) ==
          basis_element(back.pres, 1).scaled(Scalar::root_power(p->field, 2)));
}

TEST_CASE("factor documents parse and scope element indices") {
    PresPtr a = examples::group_algebra({2}, FieldSpec::rational());
    doc::Document fa = doc::document_of(a);
    doc::Document d = doc::document_of(a, {{"W", outer(unit_element(a), unit_element(a))}});
    d.factors = {std::make_shared<doc::Document>(fa), std::make_shared<doc::Document>(fa)};
    doc::Document back = doc::parse_document(doc::emit_document(d));
    REQUIRE(back.factors.size() == 2);
    CHECK(back.element_over("W", {back.factors[0]->pres, back.factors[1]->pres}) ==
          outer(unit_element(back.factors[0]->pres), unit_element(back.factors[1]->pres)));
}

TEST_CASE("malformed documents raise DocumentError") {
    CHECK_THROWS_AS(doc::parse_document("not json"), doc::DocumentError);
    CHECK_THROWS_AS(doc::parse_document("{}"), doc::DocumentError);
    CHECK_THROWS_AS(doc::parse_document(R"({"field":{"kind":"nosuch"},"dim":1,
        "basis":["1"],"unit":[[0,"1"]],"mult":[[[[0,"1"]]]],
        "comult":[[[0,0,"1"]]],"counit":["1"]})"),
                    doc::DocumentError);
    // Out-of-range index.
    PresPtr a = examples::group_algebra({2}, FieldSpec::rational());
    doc::Document d = doc::document_of(a);
    d.elements["bad"] = {{{5}, Scalar::one(a->field)}};
    CHECK_THROWS_AS(d.element_over("bad", {a}), doc::DocumentError);
    CHECK_THROWS_AS(d.element_over("missing", {a}), doc::DocumentError);
}

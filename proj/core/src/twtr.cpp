#include "twistlab/twtr.hpp"

#include <algorithm>

namespace twistlab::twtr {

namespace {

std::string res(const TensorElement& lhs, const TensorElement& rhs) {
    return (lhs - rhs).str();
}

// Kronecker product map between tensor-product presentations.
LinearMap tensor_map(const LinearMap& f1, const LinearMap& f2, const PresPtr& src,
                     const PresPtr& tgt) {
    const FieldSpec& fld = src->field;
    const int s1 = f1.source->dim, s2 = f2.source->dim;
    const int t1 = f1.target->dim, t2 = f2.target->dim;
    linalg::Mat m(t1 * t2, linalg::Vec(s1 * s2, Scalar::zero(fld)));
    for (int i1 = 0; i1 < t1; ++i1)
        for (int i2 = 0; i2 < t2; ++i2)
            for (int j1 = 0; j1 < s1; ++j1)
                for (int j2 = 0; j2 < s2; ++j2) {
                    Scalar v = f1.matrix[i1][j1] * f2.matrix[i2][j2];
                    if (!v.is_zero()) m[i1 * t2 + i2][j1 * s2 + j2] = v;
                }
    return LinearMap(src, tgt, std::move(m));
}

// Projection maps Id (x) eps and eps (x) Id out of a tensor-product
// presentation (no R-matrix needed).
std::pair<LinearMap, LinearMap> projection_maps(const PresPtr& prod) {
    if (!prod->tensor_factors)
        throw ProjectionMismatch("projection: presentation has no tensor factorization");
    const PresPtr& h1 = prod->tensor_factors->first;
    const PresPtr& h2 = prod->tensor_factors->second;
    const FieldSpec& fld = prod->field;
    const int d1 = h1->dim, d2 = h2->dim;
    linalg::Mat m1(d1, linalg::Vec(d1 * d2, Scalar::zero(fld)));
    linalg::Mat m2(d2, linalg::Vec(d1 * d2, Scalar::zero(fld)));
    for (int j1 = 0; j1 < d1; ++j1)
        for (int j2 = 0; j2 < d2; ++j2) {
            if (!h2->counit[j2].is_zero()) m1[j1][j1 * d2 + j2] = h2->counit[j2];
            if (!h1->counit[j1].is_zero()) m2[j2][j1 * d2 + j2] = h1->counit[j1];
        }
    return {LinearMap(prod, h1, std::move(m1)), LinearMap(prod, h2, std::move(m2))};
}

// (Id (x) tau (x) Id)(X1 (x) X2) fused into the product presentation.
TensorElement middle_flip_fuse(const TensorElement& x1, const TensorElement& x2,
                               const PresPtr& prod) {
    TensorElement four = leg_flip(outer(x1, x2), 2, 3);
    return fuse_legs(fuse_legs(four, 3, prod), 1, prod);
}

}  // namespace

bool same_endpoint(const Endpoint& a, const Endpoint& b) {
    if (!same_presentation(a.pres, b.pres)) return false;
    if (a.r.has_value() != b.r.has_value()) return false;
    if (!a.r) return true;
    return a.r->element == b.r->element.retag(a.r->element.factors()) &&
           a.r->triangular == b.r->triangular;
}

bool onecell_equal(const TwistedMorphism& a, const TwistedMorphism& b) {
    return same_endpoint(a.source, b.source) && same_endpoint(a.target, b.target) &&
           a.f.matrix == b.f.matrix &&
           a.F.element == b.F.element.retag(a.F.element.factors());
}

MorphismCheck check_morphism(const Endpoint& source, const Endpoint& target,
                             const LinearMap& f, const Twist& F) {
    MorphismCheck out;
    ValidationReport& rep = out.report;
    if (!same_presentation(f.source, source.pres) ||
        !same_presentation(f.target, target.pres) ||
        !same_presentation(F.carrier, target.pres)) {
        rep.require("signatures match", false);
        return out;
    }
    const PresPtr& src = source.pres;
    const PresPtr& tgt = target.pres;

    rep.require("f(1) = 1", f.apply1(unit_element(src)) == unit_element(tgt));
    bool alg = true;
    std::string alg_res;
    for (int i = 0; i < src->dim && alg; ++i)
        for (int j = 0; j < src->dim && alg; ++j) {
            TensorElement lhs = f.apply1(elem_mul(basis_element(src, i), basis_element(src, j)));
            TensorElement rhs = elem_mul(f.apply1(basis_element(src, i)),
                                         f.apply1(basis_element(src, j)));
            if (lhs != rhs) {
                alg = false;
                alg_res = "at (" + src->basis_labels[i] + ", " + src->basis_labels[j] +
                          "): " + res(lhs, rhs);
            }
        }
    rep.require("f multiplicative", alg, alg_res);

    bool cu = true;
    std::string cu_res;
    for (int i = 0; i < src->dim && cu; ++i) {
        Scalar lhs = counit_of(tgt, f.apply1(basis_element(src, i)));
        if (!(lhs - src->counit[i]).is_zero()) {
            cu = false;
            cu_res = "at " + src->basis_labels[i] + ": " + (lhs - src->counit[i]).str();
        }
    }
    rep.require("f counital", cu, cu_res);

    // Coalgebra map into the twisted target: F Delta'(f(x)) F^{-1} = (f(x)f)(Delta(x)).
    bool co = true;
    std::string co_res;
    for (int i = 0; i < src->dim && co; ++i) {
        TensorElement lhs = elem_mul(
            elem_mul(F.element, comult_of(tgt, f.apply1(basis_element(src, i)))), F.inverse);
        TensorElement rhs =
            apply_maps(comult_of(src, basis_element(src, i)), {f, f});
        if (lhs != rhs) {
            co = false;
            co_res = "at " + src->basis_labels[i] + ": " + res(lhs, rhs);
        }
    }
    rep.require("twisted coalgebra map", co, co_res);

    if (source.triangular_mode() && target.triangular_mode()) {
        TensorElement lhs = apply_maps(source.r->element.retag({src, src}), {f, f});
        TensorElement rhs = elem_mul(
            elem_mul(leg_flip(F.element, 1, 2), target.r->element.retag({tgt, tgt})),
            F.inverse);
        rep.require("R-matrix intertwining", lhs == rhs, res(lhs, rhs));
    }

    if (rep.ok()) out.value = TwistedMorphism{source, target, f, F};
    return out;
}

TwistedMorphism require_morphism(const Endpoint& source, const Endpoint& target,
                                 const LinearMap& f, const Twist& F) {
    auto chk = check_morphism(source, target, f, F);
    if (!chk.value) throw InvalidCell("invalid one-cell: " + chk.report.first_failure());
    return *chk.value;
}

TwistedMorphism identity_onecell(const Endpoint& e) {
    return TwistedMorphism{e, e, LinearMap::identity(e.pres), Twist::trivial(e.pres)};
}

TwistedMorphism compose(const TwistedMorphism& outer, const TwistedMorphism& inner) {
    if (!same_endpoint(inner.target, outer.source))
        throw CompositionMismatch("compose: inner target differs from outer source");
    TensorElement felem =
        elem_mul(apply_maps(inner.F.element, {outer.f, outer.f}), outer.F.element);
    Twist tw = require_twist(outer.target.pres, felem);
    return require_morphism(inner.source, outer.target, outer.f.compose(inner.f), tw);
}

GaugeCheck check_gauge(const TensorElement& a, const TwistedMorphism& from,
                       const TwistedMorphism& to) {
    GaugeCheck out;
    ValidationReport& rep = out.report;
    if (!same_endpoint(from.source, to.source) || !same_endpoint(from.target, to.target)) {
        rep.require("endpoints match", false);
        return out;
    }
    const PresPtr& tgt = from.target.pres;
    if (a.arity() != 1 || !same_presentation(a.factors()[0], tgt)) {
        rep.require("element lies in target", false, a.str());
        return out;
    }
    Scalar eps = counit_of(tgt, a);
    rep.require("counit(a) = 1", (eps - Scalar::one(tgt->field)).is_zero(), eps.str());

    TensorElement lhs = elem_mul(outer(a, a), from.F.element.retag({tgt, tgt}));
    TensorElement rhs = elem_mul(to.F.element.retag({tgt, tgt}), comult_of(tgt, a));
    rep.require("(a(x)a)F = F' Delta'(a)", lhs == rhs, res(lhs, rhs));

    bool tw = true;
    std::string tw_res;
    const PresPtr& src = from.source.pres;
    for (int i = 0; i < src->dim && tw; ++i) {
        TensorElement l = elem_mul(a, from.f.apply1(basis_element(src, i)));
        TensorElement r = elem_mul(to.f.apply1(basis_element(src, i)), a);
        if (l != r) {
            tw = false;
            tw_res = "at " + src->basis_labels[i] + ": " + res(l, r);
        }
    }
    rep.require("a f(x) = f'(x) a", tw, tw_res);

    if (rep.ok()) out.value = GaugeTransformation{from, to, a};
    return out;
}

GaugeTransformation require_gauge(const TensorElement& a, const TwistedMorphism& from,
                                  const TwistedMorphism& to) {
    auto chk = check_gauge(a, from, to);
    if (!chk.value) throw InvalidCell("invalid 2-cell: " + chk.report.first_failure());
    return *chk.value;
}

GaugeTransformation identity_gauge(const TwistedMorphism& m) {
    return GaugeTransformation{m, m, unit_element(m.target.pres)};
}

GaugeTransformation vcompose(const GaugeTransformation& a, const GaugeTransformation& b) {
    if (!onecell_equal(b.to, a.from))
        throw BoundaryMismatch("vcompose: cells are not vertically composable");
    return require_gauge(elem_mul(a.a, b.a.retag(a.a.factors())), b.from, a.to);
}

GaugeTransformation hcompose(const GaugeTransformation& a, const GaugeTransformation& b) {
    if (!same_endpoint(b.from.target, a.from.source))
        throw BoundaryMismatch("hcompose: cells are not horizontally composable");
    TensorElement elem = elem_mul(a.a, a.from.f.apply1(b.a.retag({a.from.source.pres})));
    return require_gauge(elem, compose(a.from, b.from), compose(a.to, b.to));
}

Endpoint tensor_object(const Endpoint& e1, const Endpoint& e2) {
    if (!e1.triangular_mode() || !e2.triangular_mode())
        throw ModeMismatch("tensor_object: both factors need a triangular structure");
    if (!e1.r->triangular || !e2.r->triangular)
        throw NotTriangular("tensor_object: factors must be triangular");
    RMatrix prod =
        assemble_rmatrix(*e1.r, *e2.r, WeakRMatrix::trivial(e2.pres, e1.pres));
    return Endpoint{prod.carrier, prod};
}

TwistedMorphism tensor_onecells(const TwistedMorphism& c1, const TwistedMorphism& c2) {
    if (!c1.triangular_mode() || !c2.triangular_mode())
        throw ModeMismatch("tensor_onecells: triangular mode required on all endpoints");
    Endpoint src = tensor_object(c1.source, c2.source);
    Endpoint tgt = tensor_object(c1.target, c2.target);
    LinearMap f = tensor_map(c1.f, c2.f, src.pres, tgt.pres);
    TensorElement felem = middle_flip_fuse(c1.F.element.retag({tgt.pres->tensor_factors->first,
                                                               tgt.pres->tensor_factors->first}),
                                           c2.F.element.retag({tgt.pres->tensor_factors->second,
                                                               tgt.pres->tensor_factors->second}),
                                           tgt.pres);
    Twist tw = require_twist(tgt.pres, felem);
    return require_morphism(src, tgt, f, tw);
}

std::pair<TwistedMorphism, TwistedMorphism> projections(const Endpoint& e1,
                                                        const Endpoint& e2) {
    Endpoint prod = tensor_object(e1, e2);
    auto [m1, m2] = projection_maps(prod.pres);
    // Retarget the maps at the caller's presentations (structurally equal).
    LinearMap p1(prod.pres, e1.pres, m1.matrix);
    LinearMap p2(prod.pres, e2.pres, m2.matrix);
    TwistedMorphism c1 =
        require_morphism(prod, e1, p1, Twist::trivial(e1.pres));
    TwistedMorphism c2 =
        require_morphism(prod, e2, p2, Twist::trivial(e2.pres));
    TensorElement rr = prod.r->element.retag({prod.pres, prod.pres});
    if (apply_maps(rr, {p1, p1}) != e1.r->element.retag({e1.pres, e1.pres}) ||
        apply_maps(rr, {p2, p2}) != e2.r->element.retag({e2.pres, e2.pres}))
        throw InternalCheckFailure("projections: (p_i (x) p_i)(R~) != R_i");
    return {std::move(c1), std::move(c2)};
}

TwistedMorphism diagonal(const TwistedMorphism& c1, const TwistedMorphism& c2) {
    if (!same_endpoint(c1.source, c2.source))
        throw CompositionMismatch("diagonal: sources differ");
    if (!c1.triangular_mode() || !c2.triangular_mode())
        throw ModeMismatch("diagonal: triangular mode required");
    if (!c1.source.r->triangular)
        throw NotTriangular("diagonal: source must be triangular (S^op = S^{-1})");
    const PresPtr& src = c1.source.pres;
    Endpoint tgt = tensor_object(c1.target, c2.target);
    const PresPtr& t1 = tgt.pres->tensor_factors->first;
    const PresPtr& t2 = tgt.pres->tensor_factors->second;

    // f = (f1 (x) f2) Delta_H
    const FieldSpec& fld = src->field;
    linalg::Mat m(tgt.pres->dim, linalg::Vec(src->dim, Scalar::zero(fld)));
    for (int j = 0; j < src->dim; ++j) {
        TensorElement img =
            apply_maps(comult_of(src, basis_element(src, j)), {c1.f, c2.f});
        linalg::Vec col = fuse_legs(img.retag({t1, t2}), 1, tgt.pres).dense();
        for (int i = 0; i < tgt.pres->dim; ++i) m[i][j] = col[i];
    }
    LinearMap f(src, tgt.pres, std::move(m));

    // F = (1 (x) (f2 (x) f1)(S^{-1}) (x) 1) (Id (x) tau (x) Id)(F1 (x) F2)
    TensorElement sinv = c1.source.r->inverse.retag({src, src});
    TensorElement mid = apply_maps(sinv, {c2.f, c1.f}).retag({t2, t1});
    std::vector<PresPtr> four{t1, t2, t1, t2};
    TensorElement a = leg_embed(mid, four, {2, 3});
    TensorElement b = leg_flip(outer(c1.F.element.retag({t1, t1}),
                                     c2.F.element.retag({t2, t2})), 2, 3);
    TensorElement felem =
        fuse_legs(fuse_legs(elem_mul(a, b), 3, tgt.pres), 1, tgt.pres);
    Twist tw = require_twist(tgt.pres, felem);
    TwistedMorphism diag = require_morphism(c1.source, tgt, f, tw);

    auto [p1, p2] = projections(c1.target, c2.target);
    if (!onecell_equal(compose(p1, diag), c1) || !onecell_equal(compose(p2, diag), c2))
        throw InternalCheckFailure("diagonal: projection equations failed");
    return diag;
}

GaugeTransformation mediating_2cell(const GaugeTransformation& g1,
                                    const GaugeTransformation& g2,
                                    const TwistedMorphism& from, const TwistedMorphism& to) {
    if (!same_endpoint(from.source, to.source) || !same_endpoint(from.target, to.target))
        throw BoundaryMismatch("mediating_2cell: endpoints differ");
    const PresPtr& prod = from.target.pres;
    if (!prod->tensor_factors)
        throw ProjectionMismatch("mediating_2cell: target is not a tensor product");
    if (!from.target.triangular_mode())
        throw ModeMismatch("mediating_2cell: triangular mode required");
    const PresPtr& t1 = prod->tensor_factors->first;
    const PresPtr& t2 = prod->tensor_factors->second;
    auto [m1, m2] = projection_maps(prod);
    TensorElement rr = from.target.r->element.retag({prod, prod});
    Endpoint e1{t1, require_rmatrix(t1, apply_maps(rr, {m1, m1}))};
    Endpoint e2{t2, require_rmatrix(t2, apply_maps(rr, {m2, m2}))};
    auto [p1, p2] = projections(e1, e2);
    if (!same_endpoint(p1.source, from.target))
        throw ProjectionMismatch(
            "mediating_2cell: target R-matrix is not the product of its projections");

    // Validate the supplied cells against the projected composites.
    auto v1 = check_gauge(g1.a, compose(p1, from), compose(p1, to));
    auto v2 = check_gauge(g2.a, compose(p2, from), compose(p2, to));
    if (!v1.value)
        throw ProjectionMismatch("mediating_2cell: g1 invalid: " + v1.report.first_failure());
    if (!v2.value)
        throw ProjectionMismatch("mediating_2cell: g2 invalid: " + v2.report.first_failure());

    auto counit_ends = [&](const TensorElement& felem) {
        TensorElement four = split_leg(split_leg(felem.retag({prod, prod}), 2), 1);
        return fuse_legs(leg_counit(four, {2, 3}), 1, prod);
    };
    TensorElement g_cap = counit_ends(from.F.element);       // G
    TensorElement gp_cap = counit_ends(to.F.element);        // G'
    TensorElement g12 = fuse_legs(outer(g1.a.retag({t1}), g2.a.retag({t2})), 1, prod);
    TensorElement g = elem_mul(elem_mul(elem_inv(gp_cap), g12), g_cap);
    GaugeTransformation cell = require_gauge(g, from, to);
    if (m1.apply1(g) != g1.a.retag({t1}) || m2.apply1(g) != g2.a.retag({t2}))
        throw InternalCheckFailure("mediating_2cell: projections do not recover g1, g2");
    return cell;
}

bool mediating_is_unique(const GaugeTransformation& g,
                         const std::vector<TensorElement>& candidates) {
    const PresPtr& prod = g.from.target.pres;
    auto [m1, m2] = projection_maps(prod);
    TensorElement pr1 = m1.apply1(g.a), pr2 = m2.apply1(g.a);
    for (const auto& cand : candidates) {
        auto chk = check_gauge(cand.retag({prod}), g.from, g.to);
        if (!chk.value) continue;
        if (m1.apply1(chk.value->a) != pr1 || m2.apply1(chk.value->a) != pr2) continue;
        if (chk.value->a != g.a) return false;
    }
    return true;
}

TwistedMorphism terminal_cell(const Endpoint& e) {
    const FieldSpec& fld = e.pres->field;
    PresPtr k = base_field_presentation(fld);
    Endpoint tgt{k, std::nullopt};
    if (e.triangular_mode())
        tgt.r = require_triangular(k, TensorElement::unit({k, k}));
    linalg::Mat m(1, linalg::Vec(e.pres->dim, Scalar::zero(fld)));
    for (int j = 0; j < e.pres->dim; ++j) m[0][j] = e.pres->counit[j];
    TwistedMorphism cell =
        require_morphism(e, tgt, LinearMap(e.pres, k, std::move(m)), Twist::trivial(k));
    // Every gauge endomorphism is 1: a scalar k with k^2 = k and counit 1 is 1.
    for (long v : {0L, 1L}) {
        TensorElement a({k});
        a.add_term({0}, Scalar::from_int(fld, v));
        bool valid = check_gauge(a, cell, cell).value.has_value();
        if (valid != (v == 1))
            throw InternalCheckFailure("terminal_cell: gauge endomorphism not forced to 1");
    }
    return cell;
}

bool is_invertible_onecell(const TwistedMorphism& c) { return c.f.is_invertible(); }

TwistedMorphism invert_onecell(const TwistedMorphism& c) {
    LinearMap finv = c.f.inverse();  // throws NotInvertible
    TensorElement gelem = apply_maps(c.F.inverse.retag({c.target.pres, c.target.pres}),
                                     {finv, finv});
    Twist g = require_twist(c.source.pres, gelem);
    TwistedMorphism inv = require_morphism(c.target, c.source, finv, g);
    if (!onecell_equal(compose(inv, c), identity_onecell(c.source)) ||
        !onecell_equal(compose(c, inv), identity_onecell(c.target)))
        throw InternalCheckFailure("invert_onecell: composites are not identities");
    return inv;
}

TwistedMorphism partial_automorphism(const Endpoint& e, const TensorElement& a) {
    const PresPtr& p = e.pres;
    if (a.arity() != 1 || !same_presentation(a.factors()[0], p))
        throw SignatureMismatch("partial_automorphism: element not in the bialgebra");
    Scalar eps = counit_of(p, a);
    if (!(eps - Scalar::one(p->field)).is_zero())
        throw CounitNotOne("partial_automorphism: counit(a) = " + eps.str());
    TensorElement ainv = elem_inv(a);  // throws NotInvertible
    Twist tw = twist_by_unit(Twist::trivial(p), a);
    linalg::Mat m(p->dim, linalg::Vec(p->dim, Scalar::zero(p->field)));
    for (int j = 0; j < p->dim; ++j) {
        linalg::Vec col = elem_mul(elem_mul(a, basis_element(p, j)), ainv).dense();
        for (int i = 0; i < p->dim; ++i) m[i][j] = col[i];
    }
    return require_morphism(e, e, LinearMap(p, p, std::move(m)), tw);
}

GaugeVerdict gauge_equivalent(const TwistedMorphism& c1, const TwistedMorphism& c2,
                              const GaugeSearchBudget& budget) {
    if (!same_endpoint(c1.source, c2.source) || !same_endpoint(c1.target, c2.target))
        throw BoundaryMismatch("gauge_equivalent: endpoints differ");
    const PresPtr& tgt = c1.target.pres;
    const PresPtr& src = c1.source.pres;
    const FieldSpec& fld = tgt->field;
    std::vector<PresPtr> factors{tgt};

    std::vector<search::LinearConstraint> linear;
    linear.push_back({[tgt](const TensorElement& a) { return leg_counit(a, {1}); },
                      unit_element(base_field_presentation(tgt->field))});
    TensorElement zero1(factors);
    for (int i = 0; i < src->dim; ++i) {
        TensorElement fx = c1.f.apply1(basis_element(src, i));
        TensorElement fpx = c2.f.apply1(basis_element(src, i));
        linear.push_back({[fx, fpx](const TensorElement& a) {
                              return elem_mul(a, fx) - elem_mul(fpx, a);
                          },
                          zero1});
    }
    TensorElement felem = c1.F.element.retag({tgt, tgt});
    TensorElement fpelem = c2.F.element.retag({tgt, tgt});
    std::vector<search::QuadResidual> quads;
    quads.push_back({[tgt, fpelem](const TensorElement& a) {
                         return elem_mul(fpelem, comult_of(tgt, a));
                     },
                     [felem](const TensorElement& a, const TensorElement& b) {
                         return elem_mul(outer(a, b), felem);
                     }});

    search::Output eng(zero1);
    try {
        eng = search::solve_quadratic_system(
            factors, linear, quads, tgt->dim,
            budget.grid.empty() ? search::default_grid(fld) : budget.grid,
            budget.node_budget, budget.dim_cap);
    } catch (const search::CapExceeded& e) {
        return {GaugeVerdictKind::Unknown, std::nullopt, e.what()};
    }
    if (!eng.linear_consistent)
        return {GaugeVerdictKind::NotEqual, std::nullopt,
                "linear gauge constraints are inconsistent"};
    for (const auto& cand : eng.candidates) {
        auto chk = check_gauge(cand, c1, c2);
        if (!chk.value) continue;
        try {
            elem_inv(cand);
        } catch (const NotInvertible&) {
            continue;
        }
        return {GaugeVerdictKind::Equal, *chk.value, "invertible witness found"};
    }
    return {GaugeVerdictKind::Unknown, std::nullopt,
            "no invertible witness within the search budget"};
}

CertificationReport certify_twisted_tensor_product(const TwistedMorphism& c) {
    CertificationReport out;
    ValidationReport& rep = out.report;
    const PresPtr& prod = c.target.pres;
    if (!prod->tensor_factors) {
        rep.require("target is a tensor product", false);
        return out;
    }
    rep.require("target is a tensor product", true);
    const PresPtr& h1 = prod->tensor_factors->first;
    const PresPtr& h2 = prod->tensor_factors->second;

    out.certified = is_invertible_onecell(c);
    rep.require("one-cell invertible", out.certified);

    auto [m1, m2] = projection_maps(prod);
    LinearMap f1 = m1.compose(c.f), f2 = m2.compose(c.f);
    rep.require("component into first factor surjective",
                linalg::rank(f1.matrix) == h1->dim);
    rep.require("component into second factor surjective",
                linalg::rank(f2.matrix) == h2->dim);

    // Twist of the form 1 (x) W^{-1} (x) 1 with W a central weak R-matrix.
    TensorElement four = split_leg(split_leg(c.F.element.retag({prod, prod}), 2), 1);
    TensorElement winv = leg_counit(four, {1, 4});  // in h2 (x) h1
    std::vector<PresPtr> legs{h1, h2, h1, h2};
    bool middle_form = (leg_embed(winv, legs, {2, 3}) == four);
    rep.require("twist has the form 1(x)W^{-1}(x)1", middle_form, four.str());
    if (middle_form) {
        bool weak_ok = false, central = false;
        try {
            TensorElement w = elem_inv(winv);
            auto chk = check_weak_rmatrix(h2, h1, w);
            weak_ok = chk.value.has_value();
            central = weak_ok && is_central(w);
            if (weak_ok) {
                WeakRMatrix wr = *chk.value;
                wr.central = central;
                out.w = wr;
            }
        } catch (const NotInvertible&) {
        }
        rep.require("W is a weak R-matrix of (H2, H1)", weak_ok);
        rep.require("W is central", central);
    }

    // Reconstruction as the diagonal of the projected composites.
    bool diag_ok = false;
    std::string diag_note;
    if (c.triangular_mode()) {
        try {
            TensorElement rr = c.target.r->element.retag({prod, prod});
            Endpoint e1{h1, require_rmatrix(h1, apply_maps(rr, {m1, m1}))};
            Endpoint e2{h2, require_rmatrix(h2, apply_maps(rr, {m2, m2}))};
            auto [p1, p2] = projections(e1, e2);
            if (same_endpoint(p1.source, c.target)) {
                TwistedMorphism d = diagonal(compose(p1, c), compose(p2, c));
                diag_ok = onecell_equal(d, c);
            } else {
                diag_note = "target R-matrix is not the product of its projections";
            }
        } catch (const std::exception& e) {
            diag_note = e.what();
        }
    } else {
        diag_note = "triangular mode required";
    }
    rep.require("equals the diagonal of its projections", diag_ok, diag_note);
    return out;
}

}  // namespace twistlab::twtr

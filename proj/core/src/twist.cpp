#include "twistlab/twist.hpp"

namespace twistlab {

namespace {

bool arity2_over(const TensorElement& t, const PresPtr& p) {
    return t.arity() == 2 && same_presentation(t.factors()[0], p) &&
           same_presentation(t.factors()[1], p);
}

std::string res(const TensorElement& lhs, const TensorElement& rhs) {
    return (lhs - rhs).str();
}

}  // namespace

Twist Twist::trivial(const PresPtr& p) {
    TensorElement one = TensorElement::unit({p, p});
    return Twist{p, one, one, std::nullopt};
}

WeakRMatrix WeakRMatrix::trivial(const PresPtr& a, const PresPtr& b) {
    TensorElement one = TensorElement::unit({a, b});
    return WeakRMatrix{a, b, one, one, true};
}

TwistCheck check_twist(const PresPtr& carrier, const TensorElement& f) {
    TwistCheck out;
    if (!arity2_over(f, carrier)) {
        out.report.require("element lies in H(x)H", false, f.str());
        return out;
    }
    TensorElement finv(f.factors());
    bool invertible = true;
    try {
        finv = elem_inv(f);
    } catch (const NotInvertible&) {
        invertible = false;
    }
    out.report.require("invertibility", invertible);
    if (!invertible) return out;

    TensorElement one1 = unit_element(carrier);
    TensorElement norm_l = leg_counit(f, {1});
    TensorElement norm_r = leg_counit(f, {2});
    out.report.require("normalization (eps(x)Id)(F) = 1", norm_l == one1, res(norm_l, one1));
    out.report.require("normalization (Id(x)eps)(F) = 1", norm_r == one1, res(norm_r, one1));

    TensorElement lhs = elem_mul(leg_embed(f, 3, {1, 2}), leg_comult(f, 1));
    TensorElement rhs = elem_mul(leg_embed(f, 3, {2, 3}), leg_comult(f, 2));
    out.report.require("2-cocycle condition", lhs == rhs, res(lhs, rhs));

    if (out.report.ok()) out.value = Twist{carrier, f, finv, std::nullopt};
    return out;
}

Twist require_twist(const PresPtr& carrier, const TensorElement& f) {
    TwistCheck c = check_twist(carrier, f);
    if (!c.value) throw std::runtime_error("not a twist: " + c.report.first_failure());
    return *c.value;
}

RMatrixCheck check_rmatrix(const PresPtr& carrier, const TensorElement& r) {
    RMatrixCheck out;
    if (!arity2_over(r, carrier)) {
        out.report.require("element lies in H(x)H", false, r.str());
        return out;
    }
    TensorElement rinv(r.factors());
    bool invertible = true;
    try {
        rinv = elem_inv(r);
    } catch (const NotInvertible&) {
        invertible = false;
    }
    out.report.require("invertibility", invertible);
    if (!invertible) return out;

    bool qc = true;
    std::string qc_res;
    for (int i = 0; i < carrier->dim && qc; ++i) {
        TensorElement d = comult_of(carrier, basis_element(carrier, i));
        TensorElement lhs = elem_mul(r, d);
        TensorElement rhs = elem_mul(leg_flip(d, 1, 2), r);
        if (!(lhs == rhs)) {
            qc = false;
            qc_res = "basis " + carrier->basis_labels[i] + ": " + res(lhs, rhs);
        }
    }
    out.report.require("quasi-cocommutativity Delta^op = R Delta(.) R^{-1}", qc, qc_res);

    TensorElement r13 = leg_embed(r, 3, {1, 3});
    TensorElement r12 = leg_embed(r, 3, {1, 2});
    TensorElement r23 = leg_embed(r, 3, {2, 3});
    TensorElement hex1_l = leg_comult(r, 2);
    TensorElement hex1_r = elem_mul(r13, r12);
    out.report.require("hexagon (Id(x)Delta)(R) = R13 R12", hex1_l == hex1_r, res(hex1_l, hex1_r));
    TensorElement hex2_l = leg_comult(r, 1);
    TensorElement hex2_r = elem_mul(r13, r23);
    out.report.require("hexagon (Delta(x)Id)(R) = R13 R23", hex2_l == hex2_r, res(hex2_l, hex2_r));

    TensorElement qyb_l = elem_mul(elem_mul(r12, r13), r23);
    TensorElement qyb_r = elem_mul(elem_mul(r23, r13), r12);
    out.report.require("quantum Yang-Baxter equation", qyb_l == qyb_r, res(qyb_l, qyb_r));

    TensorElement one1 = unit_element(carrier);
    bool counits = leg_counit(r, {1}) == one1 && leg_counit(r, {2}) == one1 &&
                   leg_counit(rinv, {1}) == one1 && leg_counit(rinv, {2}) == one1;
    out.report.require("counit normalization of R and R^{-1}", counits);

    if (out.report.ok()) {
        bool tri = rinv == leg_flip(r, 1, 2);
        out.value = RMatrix{carrier, r, rinv, tri};
    }
    return out;
}

RMatrix require_rmatrix(const PresPtr& carrier, const TensorElement& r) {
    RMatrixCheck c = check_rmatrix(carrier, r);
    if (!c.value) throw std::runtime_error("not quasitriangular: " + c.report.first_failure());
    return *c.value;
}

RMatrix require_triangular(const PresPtr& carrier, const TensorElement& r) {
    RMatrix m = require_rmatrix(carrier, r);
    if (!m.triangular) throw std::runtime_error("R-matrix is not triangular: R^{-1} != R^op");
    return m;
}

WeakCheck check_weak_rmatrix(const PresPtr& a, const PresPtr& b, const TensorElement& r) {
    WeakCheck out;
    if (r.arity() != 2 || !same_presentation(r.factors()[0], a) ||
        !same_presentation(r.factors()[1], b)) {
        out.report.require("element lies in A(x)B", false, r.str());
        return out;
    }
    TensorElement rinv(r.factors());
    bool invertible = true;
    try {
        rinv = elem_inv(r);
    } catch (const NotInvertible&) {
        invertible = false;
    }
    out.report.require("invertibility", invertible);
    if (!invertible) return out;

    // (Id_A (x) Delta_B)(R) = R13 R12 in A (x) B (x) B
    std::vector<PresPtr> abb{a, b, b};
    TensorElement h1_l = leg_comult(r, 2);
    TensorElement h1_r = elem_mul(leg_embed(r, abb, {1, 3}), leg_embed(r, abb, {1, 2}));
    out.report.require("weak hexagon (Id(x)Delta)(R) = R13 R12", h1_l == h1_r, res(h1_l, h1_r));
    // (Delta_A (x) Id_B)(R) = R13 R23 in A (x) A (x) B
    std::vector<PresPtr> aab{a, a, b};
    TensorElement h2_l = leg_comult(r, 1);
    TensorElement h2_r = elem_mul(leg_embed(r, aab, {1, 3}), leg_embed(r, aab, {2, 3}));
    out.report.require("weak hexagon (Delta(x)Id)(R) = R13 R23", h2_l == h2_r, res(h2_l, h2_r));

    TensorElement eps_l = leg_counit(r, {1});
    TensorElement eps_r = leg_counit(r, {2});
    out.report.require("(eps_A(x)Id)(R) = 1_B", eps_l == unit_element(b), res(eps_l, unit_element(b)));
    out.report.require("(Id(x)eps_B)(R) = 1_A", eps_r == unit_element(a), res(eps_r, unit_element(a)));

    if (out.report.ok()) out.value = WeakRMatrix{a, b, r, rinv, is_central(r)};
    return out;
}

WeakRMatrix require_weak_rmatrix(const PresPtr& a, const PresPtr& b, const TensorElement& r) {
    WeakCheck c = check_weak_rmatrix(a, b, r);
    if (!c.value) throw std::runtime_error("not a weak R-matrix: " + c.report.first_failure());
    return *c.value;
}

PresPtr twist_bialgebra(const PresPtr& h, const Twist& f) {
    if (!same_presentation(f.carrier, h)) throw SignatureMismatch("twist carrier mismatch");
    std::vector<Sparse2> comult(h->dim);
    for (int i = 0; i < h->dim; ++i) {
        TensorElement d = comult_of(h, basis_element(h, i));
        TensorElement df = elem_mul(elem_mul(f.element, d), f.inverse);
        for (const auto& [k, c] : df.support()) comult[i][{k[0], k[1]}] = c;
    }
    auto hf = std::make_shared<BialgebraPresentation>(h->field, h->dim, h->basis_labels, h->mult,
                                                      h->unit, std::move(comult), h->counit);
    if (h->tensor_factors)
        const_cast<BialgebraPresentation&>(*hf).tensor_factors = h->tensor_factors;
    ValidationReport rep = validate_bialgebra(hf);
    if (!rep.ok())
        throw InternalCheckFailure("twisted bialgebra failed revalidation: " + rep.first_failure());
    return hf;
}

RMatrix twist_rmatrix(const RMatrix& r, const Twist& f) {
    if (!same_presentation(r.carrier, f.carrier)) throw SignatureMismatch("twist/R carrier mismatch");
    PresPtr hf = twist_bialgebra(r.carrier, f);
    TensorElement rf = elem_mul(elem_mul(leg_flip(f.element, 1, 2), r.element), f.inverse);
    RMatrixCheck chk = check_rmatrix(hf, rf.retag({hf, hf}));
    if (!chk.value)
        throw InternalCheckFailure("twisted R-matrix failed revalidation: " + chk.report.first_failure());
    if (chk.value->triangular != r.triangular)
        throw InternalCheckFailure("twisting did not preserve the triangular flag");
    return *chk.value;
}

TensorElement conjugate_by_unit(const PresPtr& carrier, const TensorElement& t,
                                const TensorElement& h) {
    TensorElement hinv = elem_inv(h);
    return elem_mul(elem_mul(outer(h, h), t), comult_of(carrier, hinv));
}

Twist twist_by_unit(const Twist& f, const TensorElement& h) {
    if (h.arity() != 1 || !same_presentation(h.factors()[0], f.carrier))
        throw SignatureMismatch("gauge unit not an element of the carrier");
    TensorElement fh = conjugate_by_unit(f.carrier, f.element, h);
    Twist out = require_twist(f.carrier, fh);
    out.witness = h;
    return out;
}

Twist rmatrix_as_twist(const RMatrix& r) {
    TwistCheck chk = check_twist(r.carrier, r.element);
    if (!chk.value)
        throw InternalCheckFailure("quasitriangular structure failed twist axioms: " +
                                   chk.report.first_failure());
    return *chk.value;
}

WeakVariants weak_variants(const WeakRMatrix& w) {
    PresPtr aop = opposite(w.left), bop = opposite(w.right);
    PresPtr acop = coopposite(w.left), bcop = coopposite(w.right);

    TensorElement wop = leg_flip(w.element, 1, 2);  // in B (x) A
    WeakCheck opc = check_weak_rmatrix(bop, aop, wop.retag({bop, aop}));
    if (!opc.value)
        throw InternalCheckFailure("W^op failed over (B^op, A^op): " + opc.report.first_failure());

    WeakCheck invc = check_weak_rmatrix(acop, bcop, w.inverse.retag({acop, bcop}));
    if (!invc.value)
        throw InternalCheckFailure("W^{-1} failed over (A^cop, B^cop): " + invc.report.first_failure());

    WeakVariants out{*opc.value, *invc.value, std::nullopt, std::nullopt};

    if (w.central) {
        WeakCheck opc2 = check_weak_rmatrix(w.right, w.left, wop.retag({w.right, w.left}));
        if (!opc2.value)
            throw InternalCheckFailure("central W^op failed over (B, A): " +
                                       opc2.report.first_failure());
        out.op_central = *opc2.value;
        WeakCheck invc2 = check_weak_rmatrix(w.left, w.right, w.inverse);
        if (!invc2.value)
            throw InternalCheckFailure("central W^{-1} failed over (A, B): " +
                                       invc2.report.first_failure());
        out.inv_central = *invc2.value;
    }
    return out;
}

TensorElement ddr_expand(const WeakRMatrix& w) {
    // (Delta_A (x) Delta_B)(R)
    TensorElement lhs = leg_comult(leg_comult(w.element, 1), 3);
    // R14 R13 R24 R23 in A (x) A (x) B (x) B
    std::vector<PresPtr> aabb{w.left, w.left, w.right, w.right};
    TensorElement rhs = elem_mul(
        elem_mul(elem_mul(leg_embed(w.element, aabb, {1, 4}), leg_embed(w.element, aabb, {1, 3})),
                 leg_embed(w.element, aabb, {2, 4})),
        leg_embed(w.element, aabb, {2, 3}));
    if (!(lhs == rhs))
        throw InternalCheckFailure("(Delta(x)Delta)(R) expansion failed: " + res(lhs, rhs));
    return lhs;
}

PhiDecomposition phi_decompose(const PresPtr& h1, const PresPtr& h2, const Twist& f) {
    const PresPtr& carrier = f.carrier;
    if (!carrier->tensor_factors)
        throw SignatureMismatch("phi decomposition requires a carrier built as a tensor product");
    auto [fa, fb] = *carrier->tensor_factors;
    if (!same_presentation(fa, h1) || !same_presentation(fb, h2))
        throw SignatureMismatch("carrier factors do not match the given pair");

    TensorElement f4 = split_leg(split_leg(f.element, 2), 1);  // over (H1,H2,H1,H2)
    TensorElement f1 = leg_counit(f4, {2, 4});                 // H1 (x) H1
    TensorElement f2 = leg_counit(f4, {1, 3});                 // H2 (x) H2
    TensorElement g = leg_counit(f4, {2, 3});                  // H1 (x) H2
    TensorElement hh = leg_counit(f4, {1, 4});                 // H2 (x) H1
    TensorElement r = elem_mul(leg_flip(g, 1, 2), elem_inv(hh));

    TwistCheck c1 = check_twist(h1, f1);
    if (!c1.value) throw InternalCheckFailure("F1 failed twist axioms: " + c1.report.first_failure());
    TwistCheck c2 = check_twist(h2, f2);
    if (!c2.value) throw InternalCheckFailure("F2 failed twist axioms: " + c2.report.first_failure());

    PresPtr h1f = twist_bialgebra(h1, *c1.value);
    PresPtr h2f = twist_bialgebra(h2, *c2.value);
    WeakCheck wc = check_weak_rmatrix(h2f, h1f, r.retag({h2f, h1f}));
    if (!wc.value)
        throw InternalCheckFailure("R = G^op H^{-1} failed weak axioms over the twisted pair: " +
                                   wc.report.first_failure());
    return PhiDecomposition{*c1.value, *c2.value, g, hh, r, *wc.value};
}

namespace {

// (1 (x) X (x) 1)((Id (x) tau (x) Id)(F1 (x) F2)) fused into the carrier,
// with X in H2 (x) H1 and Fi in Hi (x) Hi.
TensorElement canonical_product(const PresPtr& carrier, const PresPtr& h1, const PresPtr& h2,
                                const TensorElement& x, const TensorElement& f1,
                                const TensorElement& f2) {
    std::vector<PresPtr> legs{h1, h2, h1, h2};
    TensorElement mid = leg_embed(x, legs, {2, 3});
    TensorElement pair4 = leg_flip(outer(f1, f2), 2, 3);  // (H1,H2,H1,H2)
    TensorElement prod = elem_mul(mid, pair4);
    return fuse_legs(fuse_legs(prod, 3, carrier), 1, carrier);
}

}  // namespace

bool canonical_form_check(const PresPtr& h1, const PresPtr& h2, const Twist& f) {
    PhiDecomposition phi = phi_decompose(h1, h2, f);
    TensorElement g1 = fuse_legs(phi.g, 1, f.carrier);  // G as a unit of the carrier
    Twist fg = twist_by_unit(f, g1);
    TensorElement rinv = elem_inv(phi.r);  // in H2 (x) H1, untwisted algebra
    TensorElement canonical =
        canonical_product(f.carrier, h1, h2, rinv, phi.f1.element, phi.f2.element);
    if (!(fg.element == canonical))
        throw InternalCheckFailure("F^G does not equal its canonical form: " +
                                   res(fg.element, canonical));
    return true;
}

Twist assemble_twist(const Twist& f1, const Twist& f2, const WeakRMatrix& w) {
    const PresPtr h1 = f1.carrier, h2 = f2.carrier;
    PresPtr h1f = twist_bialgebra(h1, f1);
    PresPtr h2f = twist_bialgebra(h2, f2);
    if (!same_presentation(w.left, h2f) || !same_presentation(w.right, h1f))
        throw WrongWeakContext("weak matrix is not over ((H2)_{F2}, (H1)_{F1})");
    PresPtr carrier = tensor_bialgebra(h1, h2);
    TensorElement winv = w.inverse.retag({h2, h1});  // algebra structure is untwisted
    TensorElement f = canonical_product(carrier, h1, h2, winv, f1.element, f2.element);
    return require_twist(carrier, f);
}

RMatrix assemble_rmatrix(const RMatrix& r1, const RMatrix& r2, const WeakRMatrix& q) {
    if (!q.central) throw NotCentral("Q must be a central weak R-matrix");
    const PresPtr h1 = r1.carrier, h2 = r2.carrier;
    if (!same_presentation(q.left, h2) || !same_presentation(q.right, h1))
        throw WrongWeakContext("Q is not over (H2, H1)");
    PresPtr carrier = tensor_bialgebra(h1, h2);
    TensorElement r = canonical_product(carrier, h1, h2, q.element, r1.element, r2.element);
    RMatrixCheck chk = check_rmatrix(carrier, r);
    if (!chk.value)
        throw InternalCheckFailure("assembled R-matrix failed validation: " +
                                   chk.report.first_failure());
    return *chk.value;
}

RDecomposition decompose_rmatrix(const PresPtr& h1, const PresPtr& h2, const RMatrix& s) {
    Twist st = rmatrix_as_twist(s);
    PhiDecomposition phi = phi_decompose(h1, h2, st);

    RMatrixCheck c1 = check_rmatrix(h1, phi.f1.element);
    if (!c1.value)
        throw InternalCheckFailure("Phi(S) first component not quasitriangular: " +
                                   c1.report.first_failure());
    RMatrixCheck c2 = check_rmatrix(h2, phi.f2.element);
    if (!c2.value)
        throw InternalCheckFailure("Phi(S) second component not quasitriangular: " +
                                   c2.report.first_failure());

    // Q = H (G^op)^{-1} = R^{-1} in H2 (x) H1, over the *untwisted* pair.
    TensorElement q = elem_mul(phi.h, elem_inv(leg_flip(phi.g, 1, 2)));
    WeakCheck wq = check_weak_rmatrix(h2, h1, q);
    if (!wq.value)
        throw InternalCheckFailure("Q failed weak axioms over (H2, H1): " +
                                   wq.report.first_failure());
    if (!wq.value->central) throw InternalCheckFailure("Q is not central");

    // S^G must equal the reassembled canonical structure.
    TensorElement g1 = fuse_legs(phi.g, 1, s.carrier);
    Twist sg = twist_by_unit(st, g1);
    TensorElement canonical =
        canonical_product(s.carrier, h1, h2, q, phi.f1.element, phi.f2.element);
    if (!(sg.element == canonical))
        throw InternalCheckFailure("S^G does not match (1(x)Q(x)1)(Id(x)tau(x)Id)(R1(x)R2)");
    return RDecomposition{*c1.value, *c2.value, *wq.value};
}

ValidationReport central_unit_lemma_check(const PresPtr& h_pres, const RMatrix& r,
                                          const TensorElement& h) {
    ValidationReport rep;
    TensorElement hinv = elem_inv(h);  // throws NotInvertible per contract
    TensorElement rprime = conjugate_by_unit(h_pres, TensorElement::unit({h_pres, h_pres}), h);
    TensorElement dh = comult_of(h_pres, h);

    bool h_central = is_central(h);
    bool rp_central = is_central(rprime);
    bool dh_central = is_central(dh);
    rep.require("h central", h_central);
    rep.require("R' = (1(x)1)^h central", rp_central);
    rep.require("Delta(h) central", dh_central);
    rep.require("equivalence: (h and R' central) iff Delta(h) central",
                (h_central && rp_central) == dh_central);

    if (h_central && rp_central) {
        WeakCheck wc = check_weak_rmatrix(h_pres, h_pres, rprime);
        rep.require("R' is a weak R-matrix of (H, H)", wc.value.has_value(),
                    wc.value ? "" : wc.report.first_failure());
        if (wc.value) {
            TensorElement rh = conjugate_by_unit(h_pres, r.element, h);
            RMatrixCheck rc = check_rmatrix(h_pres, rh);
            rep.require("R^h quasitriangular", rc.value.has_value(),
                        rc.value ? "" : rc.report.first_failure());
        }
    }
    return rep;
}

}  // namespace twistlab

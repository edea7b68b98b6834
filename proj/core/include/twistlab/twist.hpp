#pragma once

#include <optional>

#include "twistlab/algebra.hpp"

namespace twistlab {

struct WrongWeakContext : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotCentral : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// A theorem-guaranteed validation failed: always an implementation bug.
struct InternalCheckFailure : std::logic_error {
    using std::logic_error::logic_error;
};

// Invertible normalized 2-cocycle F on its carrier.
struct Twist {
    PresPtr carrier;
    TensorElement element;   // arity 2 over carrier
    TensorElement inverse;   // verified two-sided inverse
    std::optional<TensorElement> witness;  // cohomology witness h when built as F^h

    static Twist trivial(const PresPtr& p);
};

// Quasitriangular structure; `triangular` records (and was checked as) R^{-1} = R^op.
struct RMatrix {
    PresPtr carrier;
    TensorElement element;
    TensorElement inverse;
    bool triangular = false;
};

// Weak R-matrix of the ordered pair (left, right).
struct WeakRMatrix {
    PresPtr left, right;
    TensorElement element;  // in left (x) right
    TensorElement inverse;
    bool central = false;

    static WeakRMatrix trivial(const PresPtr& a, const PresPtr& b);
};

struct PhiDecomposition {
    Twist f1;            // on H1
    Twist f2;            // on H2
    TensorElement g;     // in H1 (x) H2
    TensorElement h;     // in H2 (x) H1
    TensorElement r;     // G^op H^{-1} in H2 (x) H1
    WeakRMatrix weak;    // r validated over ((H2)_{F2}, (H1)_{F1})
};

// Checkers return the validated object when every axiom passes; the report
// carries per-axiom verdicts and residuals either way.
struct TwistCheck {
    std::optional<Twist> value;
    ValidationReport report;
};
struct RMatrixCheck {
    std::optional<RMatrix> value;
    ValidationReport report;
};
struct WeakCheck {
    std::optional<WeakRMatrix> value;
    ValidationReport report;
};

TwistCheck check_twist(const PresPtr& carrier, const TensorElement& f);
Twist require_twist(const PresPtr& carrier, const TensorElement& f);

RMatrixCheck check_rmatrix(const PresPtr& carrier, const TensorElement& r);
RMatrix require_rmatrix(const PresPtr& carrier, const TensorElement& r);
RMatrix require_triangular(const PresPtr& carrier, const TensorElement& r);

WeakCheck check_weak_rmatrix(const PresPtr& a, const PresPtr& b, const TensorElement& r);
WeakRMatrix require_weak_rmatrix(const PresPtr& a, const PresPtr& b, const TensorElement& r);

// H_F: same algebra, Delta_F = F Delta(.) F^{-1}; revalidates the axioms.
PresPtr twist_bialgebra(const PresPtr& h, const Twist& f);

// R_F = F^op R F^{-1} on H_F; preserves the triangular flag (asserted).
RMatrix twist_rmatrix(const RMatrix& r, const Twist& f);

// F^h = (h (x) h) F Delta(h^{-1}); h must be invertible.
Twist twist_by_unit(const Twist& f, const TensorElement& h);

// R^h = (h (x) h) R Delta(h^{-1}) without revalidation (callers validate).
TensorElement conjugate_by_unit(const PresPtr& carrier, const TensorElement& t,
                                const TensorElement& h);

// Every quasitriangular structure is a twist.
Twist rmatrix_as_twist(const RMatrix& r);

struct WeakVariants {
    WeakRMatrix op_variant;   // W^op over (B^op, A^op)
    WeakRMatrix inv_variant;  // W^{-1} over (A^cop, B^cop)
    std::optional<WeakRMatrix> op_central;   // W^op over (B, A), central case
    std::optional<WeakRMatrix> inv_central;  // W^{-1} over (A, B), central case
};
WeakVariants weak_variants(const WeakRMatrix& w);

// (Delta_A (x) Delta_B)(R); asserts the four-leg product expansion identity.
TensorElement ddr_expand(const WeakRMatrix& w);

PhiDecomposition phi_decompose(const PresPtr& h1, const PresPtr& h2, const Twist& f);

// Asserts F^G equals (1 (x) R^{-1} (x) 1)((Id (x) tau (x) Id)(F1 (x) F2)).
bool canonical_form_check(const PresPtr& h1, const PresPtr& h2, const Twist& f);

// F = (1 (x) W^{-1} (x) 1)((Id (x) tau (x) Id)(F1 (x) F2)) on H1 (x) H2;
// W must be validated over the twisted pair ((H2)_{F2}, (H1)_{F1}).
Twist assemble_twist(const Twist& f1, const Twist& f2, const WeakRMatrix& w);

// R = (1 (x) Q (x) 1)((Id (x) tau (x) Id)(R1 (x) R2)); Q central weak of (H2, H1).
RMatrix assemble_rmatrix(const RMatrix& r1, const RMatrix& r2, const WeakRMatrix& q);

struct RDecomposition {
    RMatrix r1, r2;
    WeakRMatrix q;  // central weak over (H2, H1)
};
RDecomposition decompose_rmatrix(const PresPtr& h1, const PresPtr& h2, const RMatrix& s);

// Centrality interplay of an invertible unit h with R: reports centrality of
// h, of R' = (1 (x) 1)^h and of Delta(h), the equivalence between them, and
// validates R^h as quasitriangular when the hypotheses hold.
ValidationReport central_unit_lemma_check(const PresPtr& h_pres, const RMatrix& r,
                                          const TensorElement& h);

}  // namespace twistlab

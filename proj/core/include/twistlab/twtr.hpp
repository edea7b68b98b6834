#pragma once

#include "twistlab/search.hpp"
#include "twistlab/twist.hpp"

namespace twistlab::twtr {

struct CompositionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BoundaryMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ModeMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ProjectionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CounitNotOne : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotTriangular : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Thrown by require_morphism / require_gauge with the failing axiom report.
struct InvalidCell : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An object: a bialgebra, optionally carrying a triangular structure (the
// plain and the triangular 2-category share one representation; morphisms
// check the extra axiom exactly when both endpoints carry an R-matrix).
struct Endpoint {
    PresPtr pres;
    std::optional<RMatrix> r;

    bool triangular_mode() const { return r.has_value(); }
};
bool same_endpoint(const Endpoint& a, const Endpoint& b);

// One-cell (f, F): f is a counital algebra map source -> target that becomes
// a coalgebra map into the F-twisted target; with R-matrices on both ends it
// additionally intertwines them through F.
struct TwistedMorphism {
    Endpoint source, target;
    LinearMap f;  // between the underlying presentations
    Twist F;      // on target.pres

    bool triangular_mode() const {
        return source.triangular_mode() && target.triangular_mode();
    }
};
// Strict coefficientwise equality of (matrix, twist) with equal endpoints.
bool onecell_equal(const TwistedMorphism& a, const TwistedMorphism& b);

struct MorphismCheck {
    std::optional<TwistedMorphism> value;
    ValidationReport report;
};
MorphismCheck check_morphism(const Endpoint& source, const Endpoint& target,
                             const LinearMap& f, const Twist& F);
TwistedMorphism require_morphism(const Endpoint& source, const Endpoint& target,
                                 const LinearMap& f, const Twist& F);

TwistedMorphism identity_onecell(const Endpoint& e);

// (f', F') o (f, F) = (f'f, (f'(x)f')(F) F').
TwistedMorphism compose(const TwistedMorphism& outer, const TwistedMorphism& inner);

// Two-cell a: from => to; an element of the common target with counit 1
// satisfying (a(x)a)F = F' Delta'(a) and a f(x) = f'(x) a.
struct GaugeTransformation {
    TwistedMorphism from, to;
    TensorElement a;  // arity 1 over the target presentation
};

struct GaugeCheck {
    std::optional<GaugeTransformation> value;
    ValidationReport report;
};
GaugeCheck check_gauge(const TensorElement& a, const TwistedMorphism& from,
                       const TwistedMorphism& to);
GaugeTransformation require_gauge(const TensorElement& a, const TwistedMorphism& from,
                                  const TwistedMorphism& to);
GaugeTransformation identity_gauge(const TwistedMorphism& m);

// Vertical composition a o b = (element product ab); b: c1 => c2, a: c2 => c3.
GaugeTransformation vcompose(const GaugeTransformation& a, const GaugeTransformation& b);
// Horizontal composition over composable one-cells: b: f => f' (H -> H'),
// a: g => g' (H' -> H''); result a g(b): g o f => g' o f'.
GaugeTransformation hcompose(const GaugeTransformation& a, const GaugeTransformation& b);

// Binary products (triangular mode only) ----------------------------------

// (H1 (x) H2, R~) with R~ = (1 (x) tau (x) 1)(R1 (x) R2).
Endpoint tensor_object(const Endpoint& e1, const Endpoint& e2);

// (f1, F1) (x) (f2, F2) = (f1 (x) f2, (Id (x) tau (x) Id)(F1 (x) F2)).
TwistedMorphism tensor_onecells(const TwistedMorphism& c1, const TwistedMorphism& c2);

// ((Id (x) eps, 1 (x) 1), (eps (x) Id, 1 (x) 1)) out of tensor_object(e1,e2);
// asserts (p_i (x) p_i)(R~) = R_i.
std::pair<TwistedMorphism, TwistedMorphism> projections(const Endpoint& e1,
                                                        const Endpoint& e2);

// <c1, c2> = ((f1 (x) f2) Delta_H, (1 (x) (f2 (x) f1)(S^{-1}) (x) 1)
// (Id (x) tau (x) Id)(F1 (x) F2)); requires the common source triangular;
// asserts p_i o diagonal = c_i exactly.
TwistedMorphism diagonal(const TwistedMorphism& c1, const TwistedMorphism& c2);

// g = (G')^{-1} (g1 (x) g2) G with G = (Id (x) eps (x) eps (x) Id)(F), for
// 2-cells g_i between the projected composites of `from` and `to`; asserts
// p_i(g) = g_i.
GaugeTransformation mediating_2cell(const GaugeTransformation& g1,
                                    const GaugeTransformation& g2,
                                    const TwistedMorphism& from, const TwistedMorphism& to);

// True when every element of `candidates` that forms a valid 2-cell
// from => to with the same projections equals g.a.
bool mediating_is_unique(const GaugeTransformation& g,
                         const std::vector<TensorElement>& candidates);

// (eps, 1 (x) 1) into the base field object; asserts every gauge endomorphism
// of it is 1.
TwistedMorphism terminal_cell(const Endpoint& e);

// Invertibility ------------------------------------------------------------

bool is_invertible_onecell(const TwistedMorphism& c);
// (f^{-1}, (f^{-1} (x) f^{-1})(F^{-1})); asserts both composites are
// identity one-cells.
TwistedMorphism invert_onecell(const TwistedMorphism& c);

// d(a) = (conjugation by a, (a (x) a) Delta(a^{-1})) for invertible a with
// counit 1; an automorphism of any (H, R).
TwistedMorphism partial_automorphism(const Endpoint& e, const TensorElement& a);

// Gauge-class comparison ----------------------------------------------------

struct GaugeSearchBudget {
    int dim_cap = 4;              // max dimension of the linear solution space
    std::vector<Scalar> grid;     // empty = search::default_grid(field)
    long node_budget = 1'000'000;
};

enum class GaugeVerdictKind { Equal, NotEqual, Unknown };
struct GaugeVerdict {
    GaugeVerdictKind kind;
    std::optional<GaugeTransformation> witness;  // invertible, when Equal
    std::string detail;
};

// Solves the linear 2-cell constraints exactly; searches the affine solution
// space for an invertible point satisfying the quadratic constraint.
// NotEqual only when the linear space is provably empty; Unknown when the
// search is inconclusive within the budget.
GaugeVerdict gauge_equivalent(const TwistedMorphism& c1, const TwistedMorphism& c2,
                              const GaugeSearchBudget& budget = {});

// Twisted tensor products ----------------------------------------------------

struct CertificationReport {
    ValidationReport report;
    bool certified = false;                 // c is an invertible one-cell
    std::optional<WeakRMatrix> w;           // when the twist is 1 (x) W^{-1} (x) 1
};

// c: (H, R) -> (H1, R1) (x) (H2, R2). Certification = invertibility of c;
// additionally reports surjectivity of the two components of f, whether the
// twist has the central weak form 1 (x) W^{-1} (x) 1, and whether c is
// reconstructed as the diagonal of its projections.
CertificationReport certify_twisted_tensor_product(const TwistedMorphism& c);

}  // namespace twistlab::twtr

#pragma once

#include "twistlab/search.hpp"
#include "twistlab/twist.hpp"

namespace twistlab::examples {

struct ZeroScale : std::runtime_error {
    using std::runtime_error::runtime_error;
};
using CapExceeded = search::CapExceeded;

// The 4-dimensional bialgebra on basis (1, g, x, gx) with g^2 = 1, x^2 = 0,
// xg = -gx, Delta(g) = g(x)g, Delta(x) = x(x)1 + g(x)x.
PresPtr sweedler_presentation(const FieldSpec& field = FieldSpec::rational());

// R_lambda = 1/2(1(x)1 + g(x)1 + 1(x)g - g(x)g)
//          + lambda/2(x(x)x - xg(x)x + x(x)xg + xg(x)xg), validated triangular.
RMatrix sweedler_rmatrix(const PresPtr& h, const Scalar& lambda);
std::pair<PresPtr, RMatrix> sweedler(const Scalar& lambda);

// F_d = 1(x)1 + d(xg(x)x), validated.
Twist sweedler_twist(const PresPtr& h, const Scalar& d);

// f_s: g -> g, x -> sx; s must be nonzero; validated automorphism.
LinearMap sweedler_morphism(const PresPtr& h, const Scalar& s);

// Group algebra of a product of cyclic groups; basis = exponent tuples in
// row-major order; grouplike comultiplication.
PresPtr group_algebra(const std::vector<int>& orders, const FieldSpec& field);

// The swap automorphism f (x <-> y) and the twist
// F = (1/n) sum_{i,j} q^{-ij} x^i (x) y^{-j} on k[Z_n x Z_n] over Q(zeta_n).
std::pair<Twist, LinearMap> gamma_twist(int n);

// Output of the R-matrix oracle. `members` is a deterministic finite list:
// either all exact solutions found (finite-locus case) or deterministic
// sample points on a solution family (`family` = true), detected when the
// hexagons hold identically on an affine space: the full linear-stage space,
// or the affine hull of the finite solutions. When `family` is set,
// `affine_dim`/`free_dirs` describe the family; otherwise the affine space
// cut out by the linear axioms.
struct BruteForceResult {
    std::vector<RMatrix> members;
    int affine_dim = 0;
    std::vector<TensorElement> free_dirs;
    bool family = false;
};

// Solves quasi-cocommutativity + counit normalization linearly, then the
// hexagons on the resulting affine space (symbolically for a family; by exact
// univariate roots for one parameter; by a finite scalar-grid search with
// constraint propagation otherwise). Filters by invertibility and QYB.
BruteForceResult brute_force_rmatrices(const PresPtr& p, long ansatz_dim_cap = 16);

struct BruteForceWeakResult {
    std::vector<WeakRMatrix> members;
    int affine_dim = 0;
    bool family = false;
};

// Same staging for weak R-matrices of (A, B): counit normalization linearly,
// weak hexagons on the affine space.
BruteForceWeakResult brute_force_weak_rmatrices(const PresPtr& a, const PresPtr& b,
                                                long ansatz_dim_cap = 16);

// Scalar grid used by the quadratic-stage search (documented budget knob).
std::vector<Scalar> default_search_grid(const FieldSpec& field);

}  // namespace twistlab::examples

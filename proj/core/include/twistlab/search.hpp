#pragma once

#include <functional>

#include "twistlab/algebra.hpp"

// Exact solver for systems that are linear-plus-quadratic in one unknown
// tensor element: hexagon equations in an unknown R-matrix, gauge equations
// in an unknown intertwiner. Shared by the fixture oracles and the
// gauge-equivalence search.
namespace twistlab::search {

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using LinOp = std::function<TensorElement(const TensorElement&)>;
using BilOp = std::function<TensorElement(const TensorElement&, const TensorElement&)>;

// op(X) = rhs, op linear.
struct LinearConstraint {
    LinOp op;
    TensorElement rhs;
};

// residual(X) = lin(X) - bil(X, X) = 0.
struct QuadResidual {
    LinOp lin;
    BilOp bil;
};

// `candidates` is either every exact solution found (finite-locus case) or
// deterministic sample points on a certified solution family (`family` =
// true), detected when the quadratic residuals vanish identically on an
// affine space: the full linear-stage space, or the affine hull of the
// finitely many solutions found. When `family` is set, `origin`,
// `affine_dim` and `free_dirs` describe the family; otherwise the affine
// space cut out by the linear constraints alone.
struct Output {
    std::vector<TensorElement> candidates;
    int affine_dim = 0;
    std::vector<TensorElement> free_dirs;
    bool family = false;
    bool linear_consistent = false;  // false: no solutions exist at all
    TensorElement origin;

    explicit Output(TensorElement o) : origin(std::move(o)) {}
};

// Scalar grid used by the quadratic-stage finite search (documented budget
// knob): small rationals, plus root-of-unity multiples over a cyclotomic
// field.
std::vector<Scalar> default_grid(const FieldSpec& field);

// Solves the linear constraints exactly, then the quadratic residuals on the
// resulting affine space: symbolically when they vanish identically; by
// exact univariate root finding when one parameter remains; by depth-first
// search over `grid` with eager constraint propagation otherwise.
// Throws CapExceeded when the ansatz exceeds `ansatz_dim_cap`, the linear
// solution space dimension exceeds `linear_dim_cap` (when >= 0), the search
// exceeds `node_budget` nodes, or a discriminant cannot be settled exactly.
Output solve_quadratic_system(const std::vector<PresPtr>& factors,
                              const std::vector<LinearConstraint>& linear,
                              const std::vector<QuadResidual>& quads, long ansatz_dim_cap,
                              const std::vector<Scalar>& grid, long node_budget = 5'000'000,
                              int linear_dim_cap = -1);

}  // namespace twistlab::search

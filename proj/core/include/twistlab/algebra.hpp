#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/linalg.hpp"
#include "twistlab/scalar.hpp"

namespace twistlab {

struct SignatureMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadPositions : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotInvertible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadPresentation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using SparseVec = std::map<int, Scalar>;                  // no zero entries stored
using Sparse2 = std::map<std::array<int, 2>, Scalar>;

class BialgebraPresentation;
using PresPtr = std::shared_ptr<const BialgebraPresentation>;

// A finite-dimensional bialgebra given by structure constants against a fixed
// basis: mult[i][j] = e_i e_j, unit = 1_H, comult[i] = Delta(e_i), counit[i].
// Immutable after construction. Construction checks shapes only; the axioms
// are checked by validate_bialgebra.
class BialgebraPresentation {
public:
    FieldSpec field;
    int dim;
    std::vector<std::string> basis_labels;
    std::vector<std::vector<SparseVec>> mult;
    SparseVec unit;
    std::vector<Sparse2> comult;
    std::vector<Scalar> counit;
    // Set when the presentation was built by tensor_bialgebra; the basis is
    // then ordered row-major with the left factor index major.
    std::optional<std::pair<PresPtr, PresPtr>> tensor_factors;

    BialgebraPresentation(FieldSpec f, int d, std::vector<std::string> labels,
                          std::vector<std::vector<SparseVec>> m, SparseVec u,
                          std::vector<Sparse2> cm, std::vector<Scalar> cu);

    bool structurally_equal(const BialgebraPresentation& o) const;
};

// Pointer equality shortcut, then structural comparison.
bool same_presentation(const PresPtr& a, const PresPtr& b);

// Sparse element of a tensor power of (possibly distinct) bialgebras.
class TensorElement {
public:
    using Key = std::vector<int>;

    explicit TensorElement(std::vector<PresPtr> factors);
    static TensorElement unit(std::vector<PresPtr> factors);

    int arity() const { return (int)factors_.size(); }
    const std::vector<PresPtr>& factors() const { return factors_; }
    const std::map<Key, Scalar>& support() const { return support_; }
    const FieldSpec& field() const;

    void add_term(const Key& key, const Scalar& coeff);  // accumulates, drops zeros
    Scalar coeff(const Key& key) const;

    bool is_zero() const { return support_.empty(); }
    bool same_signature(const TensorElement& o) const;

    TensorElement operator+(const TensorElement& o) const;
    TensorElement operator-(const TensorElement& o) const;
    TensorElement operator-() const;
    TensorElement scaled(const Scalar& c) const;
    bool operator==(const TensorElement& o) const;
    bool operator!=(const TensorElement& o) const { return !(*this == o); }

    // Reinterprets the element over bialgebras with identical dimensions and
    // field (used to move elements between H and a twisted H_F, which share
    // the algebra structure).
    TensorElement retag(std::vector<PresPtr> factors) const;

    std::string str() const;

    // Dense vector in row-major tuple order, and back.
    linalg::Vec dense() const;
    static TensorElement from_dense(std::vector<PresPtr> factors, const linalg::Vec& v);
    long total_dim() const;

private:
    std::vector<PresPtr> factors_;
    std::map<Key, Scalar> support_;
};

// Tensor product of supports: t (arity j) followed by u (arity k) -> arity j+k.
TensorElement outer(const TensorElement& t, const TensorElement& u);

// Componentwise product in the tensor-product algebra.
TensorElement elem_mul(const TensorElement& s, const TensorElement& t);

// Two-sided inverse via the left-regular representation (with a unipotent
// shortcut); throws NotInvertible.
TensorElement elem_inv(const TensorElement& t);

// Linear map between presentations; column j = image of source basis vector j.
class LinearMap {
public:
    PresPtr source, target;
    linalg::Mat matrix;  // target.dim x source.dim

    LinearMap(PresPtr src, PresPtr tgt, linalg::Mat m);
    static LinearMap identity(const PresPtr& p);
    SparseVec image_of_basis(int j) const;
    TensorElement apply1(const TensorElement& t) const;  // arity-1 helper
    LinearMap compose(const LinearMap& inner) const;     // this o inner
    bool is_invertible() const;
    LinearMap inverse() const;  // throws NotInvertible
    bool operator==(const LinearMap& o) const;
};

// Validation reporting shared by all checkers.
struct ValidationReport {
    struct Entry {
        std::string name;
        bool pass;
        std::string residual;  // printed residual element/tuple on failure
    };
    std::vector<Entry> entries;
    void require(const std::string& name, bool pass, const std::string& residual = "");
    bool ok() const;
    std::string first_failure() const;
    std::string str() const;
};

ValidationReport validate_bialgebra(const PresPtr& p);

PresPtr tensor_bialgebra(const PresPtr& a, const PresPtr& b);
PresPtr opposite(const PresPtr& p);
PresPtr coopposite(const PresPtr& p);

// Dimension-1 presentation of the base field itself.
PresPtr base_field_presentation(const FieldSpec& f);

// Leg calculus ------------------------------------------------------------

// Places t's legs at `positions` (1-based, strictly increasing) inside an
// element whose factor list is out_factors; other legs carry units.
TensorElement leg_embed(const TensorElement& t, const std::vector<PresPtr>& out_factors,
                        const std::vector<int>& positions);
// Homogeneous shorthand: all factors equal t's (required), arity legs total.
TensorElement leg_embed(const TensorElement& t, int arity, const std::vector<int>& positions);

// Swaps legs i and j (1-based); factor tags swap with them.
TensorElement leg_flip(const TensorElement& t, int i, int j);

// Applies the counit on the listed legs (1-based) and drops them.
TensorElement leg_counit(const TensorElement& t, const std::vector<int>& legs);

// Replaces leg (1-based) by two legs carrying Delta of that factor.
TensorElement leg_comult(const TensorElement& t, int leg);

// Legwise application; nullopt = identity on that leg.
TensorElement apply_maps(const TensorElement& t, const std::vector<std::optional<LinearMap>>& maps);

// Expands leg `leg` (1-based) of an element whose factor there is a tensor
// product into the two underlying legs; inverse of fuse_legs.
TensorElement split_leg(const TensorElement& t, int leg);
// Merges legs leg, leg+1 into the given tensor-product presentation.
TensorElement fuse_legs(const TensorElement& t, int leg, const PresPtr& product);

bool is_central(const TensorElement& t);
bool is_cocommutative(const PresPtr& p);

// Convenience constructors.
TensorElement basis_element(const PresPtr& p, int i);                 // arity 1
TensorElement unit_element(const PresPtr& p);                        // arity 1
TensorElement comult_of(const PresPtr& p, const TensorElement& t);   // arity1 -> arity2
Scalar counit_of(const PresPtr& p, const TensorElement& t);          // arity1 -> scalar

}  // namespace twistlab

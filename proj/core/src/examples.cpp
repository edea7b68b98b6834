#include "twistlab/examples.hpp"

#include "twistlab/search.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <utility>

namespace twistlab::examples {

namespace {

Scalar q_of(const FieldSpec& f, long num, long den) {
    return Scalar::from_rational(f, mpq_class(num, den));
}

}  // namespace

// ---------------------------------------------------------------------------
// Fixed presentations
// ---------------------------------------------------------------------------

PresPtr sweedler_presentation(const FieldSpec& field) {
    const int d = 4;  // basis: 0 = 1, 1 = g, 2 = x, 3 = gx
    const Scalar one = Scalar::one(field);
    const Scalar mone = -one;
    std::vector<std::vector<SparseVec>> mult(d, std::vector<SparseVec>(d));
    auto set = [&](int i, int j, int k, const Scalar& c) {
        if (!c.is_zero()) mult[i][j][k] = c;
    };
    for (int j = 0; j < d; ++j) {
        set(0, j, j, one);
        set(j, 0, j, one);
    }
    set(1, 1, 0, one);   // g g = 1
    set(1, 2, 3, one);   // g x = gx
    set(2, 1, 3, mone);  // x g = -gx
    set(1, 3, 2, one);   // g gx = x
    set(3, 1, 2, mone);  // gx g = -x
    // x x = x gx = gx x = gx gx = 0

    SparseVec unit{{0, one}};
    std::vector<Sparse2> comult(d);
    comult[0][{0, 0}] = one;
    comult[1][{1, 1}] = one;
    comult[2][{2, 0}] = one;  // Delta(x) = x (x) 1 + g (x) x
    comult[2][{1, 2}] = one;
    comult[3][{3, 1}] = one;  // Delta(gx) = gx (x) g + 1 (x) gx
    comult[3][{0, 3}] = one;
    std::vector<Scalar> counit{one, one, Scalar::zero(field), Scalar::zero(field)};

    auto p = std::make_shared<BialgebraPresentation>(
        field, d, std::vector<std::string>{"1", "g", "x", "gx"}, std::move(mult),
        std::move(unit), std::move(comult), std::move(counit));
    auto rep = validate_bialgebra(p);
    if (!rep.ok()) throw InternalCheckFailure("sweedler_presentation: " + rep.first_failure());
    return p;
}

RMatrix sweedler_rmatrix(const PresPtr& h, const Scalar& lambda) {
    const FieldSpec& f = h->field;
    const Scalar half = q_of(f, 1, 2);
    const Scalar lh = lambda * half;
    TensorElement r({h, h});
    r.add_term({0, 0}, half);
    r.add_term({1, 0}, half);
    r.add_term({0, 1}, half);
    r.add_term({1, 1}, -half);
    r.add_term({2, 2}, lh);
    r.add_term({3, 2}, lh);
    r.add_term({2, 3}, -lh);
    r.add_term({3, 3}, lh);
    return require_triangular(h, r);
}

std::pair<PresPtr, RMatrix> sweedler(const Scalar& lambda) {
    PresPtr h = sweedler_presentation(lambda.field());
    return {h, sweedler_rmatrix(h, lambda)};
}

Twist sweedler_twist(const PresPtr& h, const Scalar& d) {
    TensorElement f({h, h});
    f.add_term({0, 0}, Scalar::one(h->field));
    f.add_term({3, 2}, -d);  // d (xg (x) x) = -d (gx (x) x)
    return require_twist(h, f);
}

LinearMap sweedler_morphism(const PresPtr& h, const Scalar& s) {
    if (s.is_zero()) throw ZeroScale("sweedler_morphism: scale must be nonzero");
    linalg::Mat m(4, linalg::Vec(4, Scalar::zero(h->field)));
    m[0][0] = Scalar::one(h->field);
    m[1][1] = Scalar::one(h->field);
    m[2][2] = s;
    m[3][3] = s;
    return LinearMap(h, h, std::move(m));
}

PresPtr group_algebra(const std::vector<int>& orders, const FieldSpec& field) {
    if (orders.empty()) throw BadPresentation("group_algebra: need at least one order");
    long dim = 1;
    for (int n : orders) {
        if (n < 1) throw BadPresentation("group_algebra: orders must be positive");
        dim *= n;
    }
    const int g = (int)orders.size();
    auto tuple_of = [&](long idx) {
        std::vector<int> e(g);
        for (int k = g - 1; k >= 0; --k) {
            e[k] = (int)(idx % orders[k]);
            idx /= orders[k];
        }
        return e;
    };
    auto idx_of = [&](const std::vector<int>& e) {
        long idx = 0;
        for (int k = 0; k < g; ++k) idx = idx * orders[k] + (e[k] % orders[k] + orders[k]) % orders[k];
        return idx;
    };
    auto label_of = [&](const std::vector<int>& e) {
        std::string s;
        for (int k = 0; k < g; ++k) {
            if (e[k] == 0) continue;
            if (!s.empty()) s += "*";
            s += (g == 1) ? "g" : ("g" + std::to_string(k));
            if (e[k] > 1) s += "^" + std::to_string(e[k]);
        }
        return s.empty() ? std::string("1") : s;
    };

    const Scalar one = Scalar::one(field);
    std::vector<std::string> labels(dim);
    std::vector<std::vector<SparseVec>> mult(dim, std::vector<SparseVec>(dim));
    std::vector<Sparse2> comult(dim);
    std::vector<Scalar> counit(dim, one);
    for (long i = 0; i < dim; ++i) {
        auto ei = tuple_of(i);
        labels[i] = label_of(ei);
        comult[i][{(int)i, (int)i}] = one;
        for (long j = 0; j < dim; ++j) {
            auto ej = tuple_of(j);
            std::vector<int> sum(g);
            for (int k = 0; k < g; ++k) sum[k] = ei[k] + ej[k];
            mult[i][j][(int)idx_of(sum)] = one;
        }
    }
    SparseVec unit{{0, one}};
    auto p = std::make_shared<BialgebraPresentation>(field, (int)dim, std::move(labels),
                                                     std::move(mult), std::move(unit),
                                                     std::move(comult), std::move(counit));
    auto rep = validate_bialgebra(p);
    if (!rep.ok()) throw InternalCheckFailure("group_algebra: " + rep.first_failure());
    return p;
}

std::pair<Twist, LinearMap> gamma_twist(int n) {
    if (n < 1) throw BadPresentation("gamma_twist: order must be positive");
    // n <= 2 only needs the root of unity -1, so stay over Q there.
    const FieldSpec field = (n <= 2) ? FieldSpec::rational() : FieldSpec::cyclotomic(n);
    PresPtr p = group_algebra({n, n}, field);
    // basis index of x^i y^j is i*n + j
    TensorElement f({p, p});
    const Scalar inv_n = q_of(field, 1, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            long e = ((long)(-i) * j % n + n) % n;
            Scalar c = inv_n * ((n <= 2) ? Scalar::from_int(field, e == 0 ? 1 : -1)
                                         : Scalar::root_power(field, e));
            f.add_term({i * n, ((n - j) % n)}, c);
        }
    }
    Twist tw = require_twist(p, f);

    linalg::Mat m(n * n, linalg::Vec(n * n, Scalar::zero(field)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[j * n + i][i * n + j] = Scalar::one(field);
    return {std::move(tw), LinearMap(p, p, std::move(m))};
}

// ---------------------------------------------------------------------------
// Brute-force oracles
// ---------------------------------------------------------------------------

namespace {

template <typename T>
void sort_and_dedupe(std::vector<T>& xs, std::function<TensorElement(const T&)> elem) {
    std::sort(xs.begin(), xs.end(), [&](const T& a, const T& b) {
        const auto da = elem(a).dense(), db = elem(b).dense();
        return std::lexicographical_compare(da.begin(), da.end(), db.begin(), db.end());
    });
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [&](const T& a, const T& b) { return elem(a) == elem(b); }),
             xs.end());
}

}  // namespace

std::vector<Scalar> default_search_grid(const FieldSpec& field) {
    return search::default_grid(field);
}

BruteForceResult brute_force_rmatrices(const PresPtr& p, long ansatz_dim_cap) {
    const FieldSpec& f = p->field;
    std::vector<PresPtr> factors{p, p};
    TensorElement zero2(factors);

    std::vector<search::LinearConstraint> linear;
    linear.push_back({[](const TensorElement& r) { return leg_counit(r, {1}); },
                      unit_element(p)});
    linear.push_back({[](const TensorElement& r) { return leg_counit(r, {2}); },
                      unit_element(p)});
    for (int i = 0; i < p->dim; ++i) {
        TensorElement da = comult_of(p, basis_element(p, i));
        TensorElement dao = leg_flip(da, 1, 2);
        linear.push_back({[da, dao](const TensorElement& r) {
                              return elem_mul(r, da) - elem_mul(dao, r);
                          },
                          zero2});
    }

    std::vector<search::QuadResidual> quads;
    quads.push_back({[](const TensorElement& r) { return leg_comult(r, 2); },
                     [](const TensorElement& r, const TensorElement& s) {
                         return elem_mul(leg_embed(r, 3, {1, 3}), leg_embed(s, 3, {1, 2}));
                     }});
    quads.push_back({[](const TensorElement& r) { return leg_comult(r, 1); },
                     [](const TensorElement& r, const TensorElement& s) {
                         return elem_mul(leg_embed(r, 3, {1, 3}), leg_embed(s, 3, {2, 3}));
                     }});

    search::Output eng = search::solve_quadratic_system(factors, linear, quads,
                                                        ansatz_dim_cap, search::default_grid(f));
    BruteForceResult out;
    out.affine_dim = eng.affine_dim;
    out.free_dirs = eng.free_dirs;
    out.family = eng.family;
    for (const auto& cand : eng.candidates) {
        auto chk = check_rmatrix(p, cand);
        if (chk.value) out.members.push_back(*chk.value);
    }
    sort_and_dedupe<RMatrix>(out.members, [](const RMatrix& r) { return r.element; });
    return out;
}

BruteForceWeakResult brute_force_weak_rmatrices(const PresPtr& a, const PresPtr& b,
                                                long ansatz_dim_cap) {
    if (!(a->field == b->field))
        throw SignatureMismatch("brute_force_weak_rmatrices: field mismatch");
    const FieldSpec& f = a->field;
    std::vector<PresPtr> factors{a, b};

    std::vector<search::LinearConstraint> linear;
    linear.push_back({[](const TensorElement& w) { return leg_counit(w, {1}); },
                      unit_element(b)});
    linear.push_back({[](const TensorElement& w) { return leg_counit(w, {2}); },
                      unit_element(a)});

    std::vector<PresPtr> aab{a, a, b};
    std::vector<PresPtr> abb{a, b, b};
    std::vector<search::QuadResidual> quads;
    // (Delta_A (x) Id)(W) = W_13 W_23 in A (x) A (x) B
    quads.push_back({[](const TensorElement& w) { return leg_comult(w, 1); },
                     [aab](const TensorElement& r, const TensorElement& s) {
                         return elem_mul(leg_embed(r, aab, {1, 3}), leg_embed(s, aab, {2, 3}));
                     }});
    // (Id (x) Delta_B)(W) = W_13 W_12 in A (x) B (x) B
    quads.push_back({[](const TensorElement& w) { return leg_comult(w, 2); },
                     [abb](const TensorElement& r, const TensorElement& s) {
                         return elem_mul(leg_embed(r, abb, {1, 3}), leg_embed(s, abb, {1, 2}));
                     }});

    search::Output eng = search::solve_quadratic_system(factors, linear, quads,
                                                        ansatz_dim_cap, search::default_grid(f));
    BruteForceWeakResult out;
    out.affine_dim = eng.affine_dim;
    out.family = eng.family;
    for (const auto& cand : eng.candidates) {
        auto chk = check_weak_rmatrix(a, b, cand);
        if (chk.value) out.members.push_back(*chk.value);
    }
    sort_and_dedupe<WeakRMatrix>(out.members, [](const WeakRMatrix& w) { return w.element; });
    return out;
}

}  // namespace twistlab::examples

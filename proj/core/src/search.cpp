#include "twistlab/search.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace twistlab::search {

namespace {

// Quadratic polynomial in the free parameters t_0..t_{k-1}.  Keys: (-1,-1)
// constant term, (-1,j) coefficient of t_j, (i,j) with i <= j coefficient of
// t_i t_j.
using Poly = std::map<std::pair<int, int>, Scalar>;

void poly_add(Poly& p, std::pair<int, int> key, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = p.find(key);
    if (it == p.end()) {
        p.emplace(key, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) p.erase(it);
    }
}

Scalar poly_eval(const Poly& p, const std::vector<Scalar>& t, const FieldSpec& f) {
    Scalar acc = Scalar::zero(f);
    for (const auto& [key, c] : p) {
        auto [i, j] = key;
        Scalar term = c;
        if (i >= 0) term = term * t[i];
        if (j >= 0) term = term * t[j];
        acc = acc + term;
    }
    return acc;
}

std::set<int> poly_vars(const Poly& p) {
    std::set<int> vars;
    for (const auto& [key, c] : p) {
        (void)c;
        if (key.first >= 0) vars.insert(key.first);
        if (key.second >= 0) vars.insert(key.second);
    }
    return vars;
}

// Deterministic parameter values used to sample a solution family.
std::vector<Scalar> family_samples(const FieldSpec& f) {
    return {Scalar::zero(f), Scalar::one(f), Scalar::from_int(f, -1), Scalar::from_int(f, 2),
            Scalar::from_rational(f, mpq_class(1, 2))};
}

bool rational_sqrt(const mpq_class& q, mpq_class& out) {
    if (q < 0) return false;
    mpz_class num = q.get_num(), den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return false;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    out = mpq_class(rn, rd);
    out.canonicalize();
    return true;
}

// Exact roots of a polynomial of degree <= 2.  Returns false when roots may
// exist in the field but cannot be produced exactly (a non-square rational
// discriminant is decidable over Q, so only the cyclotomic case declines).
bool quadratic_roots(const Poly& p, const FieldSpec& f, std::vector<Scalar>& roots) {
    Scalar c0 = Scalar::zero(f), c1 = Scalar::zero(f), c2 = Scalar::zero(f);
    for (const auto& [key, c] : p) {
        if (key == std::make_pair(-1, -1)) c0 = c;
        else if (key.first == -1) c1 = c;
        else c2 = c;
    }
    roots.clear();
    if (c2.is_zero()) {
        if (c1.is_zero()) return !c0.is_zero();  // nonzero constant: no roots
        roots.push_back(-(c0 * c1.inv()));
        return true;
    }
    Scalar disc = c1 * c1 - Scalar::from_int(f, 4) * c2 * c0;
    if (disc.is_zero()) {
        roots.push_back(-(c1 * (Scalar::from_int(f, 2) * c2).inv()));
        return true;
    }
    if (!disc.is_rational()) return false;
    mpq_class sq;
    if (!rational_sqrt(disc.rational_value(), sq)) {
        // No rational square root; over Q that settles it, over a cyclotomic
        // field a root might still exist outside our reach.
        return f.kind == FieldKind::Rational;
    }
    Scalar s = Scalar::from_rational(f, sq);
    Scalar inv2a = (Scalar::from_int(f, 2) * c2).inv();
    roots.push_back((-c1 + s) * inv2a);
    roots.push_back((-c1 - s) * inv2a);
    return true;
}

// Depth-first search over a scalar grid with eager pruning: a polynomial is
// tested as soon as all of its variables are assigned.  Variable order is
// chosen dynamically to complete some unchecked polynomial as early as
// possible.
void grid_dfs(const std::vector<Poly>& polys, const FieldSpec& f, int k,
              const std::vector<Scalar>& grid, std::vector<std::vector<Scalar>>& solutions,
              long node_budget) {
    std::vector<std::set<int>> supports(polys.size());
    for (size_t i = 0; i < polys.size(); ++i) supports[i] = poly_vars(polys[i]);

    std::vector<Scalar> assign(k, Scalar::zero(f));
    std::vector<bool> assigned(k, false);
    std::vector<bool> checked(polys.size(), false);
    long nodes = 0;

    std::function<void(int)> rec = [&](int depth) {
        if (++nodes > node_budget)
            throw CapExceeded("quadratic search: grid search budget exceeded");
        if (depth == k) {
            solutions.push_back(assign);
            return;
        }
        // Pick the unassigned variable minimizing the number of further
        // assignments needed to complete an unchecked polynomial.
        int best = -1, best_score = 1 << 30;
        for (size_t pi = 0; pi < polys.size(); ++pi) {
            if (checked[pi]) continue;
            int missing = 0, last = -1;
            for (int v : supports[pi])
                if (!assigned[v]) {
                    ++missing;
                    last = v;
                }
            if (missing > 0 && missing - 1 < best_score) {
                best_score = missing - 1;
                best = last;
            }
        }
        if (best < 0) {  // all polynomials checked; remaining variables free
            for (int v = 0; v < k; ++v)
                if (!assigned[v]) {
                    best = v;
                    break;
                }
        }
        const int var = best;
        assigned[var] = true;
        for (const Scalar& val : grid) {
            assign[var] = val;
            // Evaluate every polynomial that just became fully assigned.
            std::vector<size_t> newly;
            bool ok = true;
            for (size_t pi = 0; pi < polys.size() && ok; ++pi) {
                if (checked[pi] || supports[pi].count(var) == 0) continue;
                bool complete = true;
                for (int v : supports[pi])
                    if (!assigned[v]) {
                        complete = false;
                        break;
                    }
                if (!complete) continue;
                newly.push_back(pi);
                checked[pi] = true;
                if (!poly_eval(polys[pi], assign, f).is_zero()) ok = false;
            }
            if (ok) rec(depth + 1);
            for (size_t pi : newly) checked[pi] = false;
        }
        assigned[var] = false;
    };
    rec(0);
}

}  // namespace

std::vector<Scalar> default_grid(const FieldSpec& field) {
    auto q = [&field](long num, long den) {
        return Scalar::from_rational(field, mpq_class(num, den));
    };
    std::vector<Scalar> g{Scalar::zero(field), Scalar::one(field), q(-1, 1), q(1, 2),
                          q(-1, 2),            q(1, 4),            q(-1, 4), q(3, 4),
                          q(-3, 4)};
    if (field.kind == FieldKind::Cyclotomic) {
        const int deg = field.degree();
        for (int e = 1; e < deg; ++e) {
            Scalar z = Scalar::root_power(field, e);
            g.push_back(z);
            g.push_back(-z);
        }
    }
    return g;
}

Output solve_quadratic_system(const std::vector<PresPtr>& factors,
                              const std::vector<LinearConstraint>& linear,
                              const std::vector<QuadResidual>& quads, long ansatz_dim_cap,
                              const std::vector<Scalar>& grid, long node_budget,
                              int linear_dim_cap) {
    const FieldSpec& f = factors.front()->field;
    TensorElement zero(factors);
    Output out(zero);
    const long n = zero.total_dim();
    if (n > ansatz_dim_cap)
        throw CapExceeded("quadratic search: ansatz dimension " + std::to_string(n) +
                          " exceeds cap " + std::to_string(ansatz_dim_cap));

    // Stage 1: linear constraints -> affine solution space.
    linalg::Mat a;
    linalg::Vec b;
    std::vector<TensorElement> basis;
    basis.reserve(n);
    for (long c = 0; c < n; ++c) {
        linalg::Vec unitv(n, Scalar::zero(f));
        unitv[c] = Scalar::one(f);
        basis.push_back(TensorElement::from_dense(factors, unitv));
    }
    for (const auto& lc : linear) {
        std::vector<linalg::Vec> cols;
        cols.reserve(n);
        for (long c = 0; c < n; ++c) cols.push_back(lc.op(basis[c]).dense());
        const size_t rows = cols.front().size();
        linalg::Vec rhs = lc.rhs.dense();
        for (size_t r = 0; r < rows; ++r) {
            linalg::Vec row(n, Scalar::zero(f));
            for (long c = 0; c < n; ++c) row[c] = cols[c][r];
            a.push_back(std::move(row));
            b.push_back(rhs[r]);
        }
    }
    std::optional<linalg::AffineSpace> space;
    if (a.empty()) {
        // No linear constraints: the whole ansatz space (solve_affine cannot
        // infer the column count from an empty system).
        linalg::AffineSpace full{linalg::Vec(n, Scalar::zero(f)), {}};
        for (long c = 0; c < n; ++c) full.directions.push_back(basis[c].dense());
        space = std::move(full);
    } else {
        space = linalg::solve_affine(a, b);
    }
    if (!space) return out;  // inconsistent: no solutions at all
    out.linear_consistent = true;
    const int k = (int)space->directions.size();
    if (linear_dim_cap >= 0 && k > linear_dim_cap)
        throw CapExceeded("quadratic search: linear solution space dimension " +
                          std::to_string(k) + " exceeds cap " + std::to_string(linear_dim_cap));
    out.affine_dim = k;
    out.origin = TensorElement::from_dense(factors, space->origin);
    for (const auto& d : space->directions)
        out.free_dirs.push_back(TensorElement::from_dense(factors, d));

    // Stage 2: expand each quadratic residual symbolically on an affine space
    // x0 + span(v_i): resid = C + sum_i t_i L_i + sum_{i<=j} t_i t_j Q_ij with
    // C = lin(x0) - bil(x0,x0), L_i = lin(v_i) - bil(x0,v_i) - bil(v_i,x0),
    // Q_ij = -(bil(v_i,v_j) + bil(v_j,v_i)) (i < j), Q_ii = -bil(v_i,v_i).
    auto expand_polys = [&quads](const TensorElement& x0,
                                 const std::vector<TensorElement>& dirs) {
        const int kk = (int)dirs.size();
        std::vector<Poly> polys;
        for (const auto& q : quads) {
            TensorElement cterm = q.lin(x0) - q.bil(x0, x0);
            std::vector<TensorElement> lin_terms, quad_terms;
            std::vector<std::pair<int, int>> quad_keys;
            for (int i = 0; i < kk; ++i) {
                const TensorElement& vi = dirs[i];
                lin_terms.push_back(q.lin(vi) - q.bil(x0, vi) - q.bil(vi, x0));
                for (int j = i; j < kk; ++j) {
                    const TensorElement& vj = dirs[j];
                    TensorElement qt =
                        (i == j) ? -q.bil(vi, vi) : -(q.bil(vi, vj) + q.bil(vj, vi));
                    quad_terms.push_back(std::move(qt));
                    quad_keys.emplace_back(i, j);
                }
            }
            // One polynomial per output coordinate appearing in any term.
            std::set<TensorElement::Key> coords;
            auto collect = [&coords](const TensorElement& t) {
                for (const auto& [key, c] : t.support()) {
                    (void)c;
                    coords.insert(key);
                }
            };
            collect(cterm);
            for (const auto& t : lin_terms) collect(t);
            for (const auto& t : quad_terms) collect(t);
            for (const auto& key : coords) {
                Poly p;
                poly_add(p, {-1, -1}, cterm.coeff(key));
                for (int i = 0; i < kk; ++i) poly_add(p, {-1, i}, lin_terms[i].coeff(key));
                for (size_t qi = 0; qi < quad_terms.size(); ++qi)
                    poly_add(p, quad_keys[qi], quad_terms[qi].coeff(key));
                if (!p.empty()) polys.push_back(std::move(p));
            }
        }
        std::sort(polys.begin(), polys.end());
        polys.erase(std::unique(polys.begin(), polys.end()), polys.end());
        return polys;
    };
    std::vector<Poly> polys = expand_polys(out.origin, out.free_dirs);

    auto point_at = [&](const std::vector<Scalar>& t) {
        TensorElement x = out.origin;
        for (int i = 0; i < k; ++i)
            if (!t[i].is_zero()) x = x + out.free_dirs[i].scaled(t[i]);
        return x;
    };

    // When a finite search produced several solutions, test whether the whole
    // affine hull of those points satisfies the quadratic residuals
    // identically; if so the hull is a certified solution family (e.g. a line
    // of R-matrices sampled at grid points).
    auto promote_family = [&](const std::vector<std::vector<Scalar>>& sols) {
        if (sols.size() < 2) return;
        linalg::Mat diffs;
        for (size_t i = 1; i < sols.size(); ++i) {
            linalg::Vec row(k, Scalar::zero(f));
            for (int j = 0; j < k; ++j) row[j] = sols[i][j] - sols[0][j];
            diffs.push_back(std::move(row));
        }
        linalg::rref(diffs);
        std::vector<TensorElement> hull_dirs;
        for (const auto& row : diffs) {
            TensorElement d(factors);
            bool nonzero = false;
            for (int j = 0; j < k; ++j)
                if (!row[j].is_zero()) {
                    d = d + out.free_dirs[j].scaled(row[j]);
                    nonzero = true;
                }
            if (nonzero) hull_dirs.push_back(std::move(d));
        }
        if (hull_dirs.empty()) return;
        TensorElement hull_origin = point_at(sols[0]);
        if (!expand_polys(hull_origin, hull_dirs).empty()) return;
        out.family = true;
        out.affine_dim = (int)hull_dirs.size();
        out.origin = std::move(hull_origin);
        out.free_dirs = std::move(hull_dirs);
    };

    if (polys.empty()) {
        // The quadratic residuals vanish identically on the affine space.
        out.family = (k > 0);
        if (k == 0) {
            out.candidates.push_back(out.origin);
        } else {
            std::vector<Scalar> t(k, Scalar::zero(f));
            out.candidates.push_back(point_at(t));
            for (const Scalar& s : family_samples(f)) {
                if (s.is_zero()) continue;
                for (int i = 0; i < k; ++i) {
                    t.assign(k, Scalar::zero(f));
                    t[i] = s;
                    out.candidates.push_back(point_at(t));
                }
            }
        }
        return out;
    }

    if (k == 0) return out;  // residual nonzero at the unique linear solution

    if (k == 1) {
        // Exact univariate solving: take roots of the first solvable
        // polynomial, filter through all others.
        std::optional<std::vector<Scalar>> candidates;
        for (const auto& p : polys) {
            std::vector<Scalar> roots;
            if (quadratic_roots(p, f, roots)) {
                candidates = std::move(roots);
                break;
            }
        }
        if (!candidates)
            throw CapExceeded("quadratic search: discriminant not solvable exactly");
        std::vector<std::vector<Scalar>> sols;
        for (const Scalar& r : *candidates) {
            bool ok = true;
            std::vector<Scalar> t{r};
            for (const auto& p : polys)
                if (!poly_eval(p, t, f).is_zero()) {
                    ok = false;
                    break;
                }
            if (ok) sols.push_back(std::move(t));
        }
        for (const auto& t : sols) out.candidates.push_back(point_at(t));
        promote_family(sols);
        return out;
    }

    // k >= 2: finite scalar-grid search with constraint propagation.
    std::vector<std::vector<Scalar>> sols;
    grid_dfs(polys, f, k, grid, sols, node_budget);
    for (const auto& t : sols) out.candidates.push_back(point_at(t));
    promote_family(sols);
    return out;
}

}  // namespace twistlab::search

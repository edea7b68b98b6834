#include "twistlab/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace twistlab {

namespace {

void prune(SparseVec& v) {
    for (auto it = v.begin(); it != v.end();)
        it = it->second.is_zero() ? v.erase(it) : std::next(it);
}

}  // namespace

BialgebraPresentation::BialgebraPresentation(FieldSpec f, int d, std::vector<std::string> labels,
                                             std::vector<std::vector<SparseVec>> m, SparseVec u,
                                             std::vector<Sparse2> cm, std::vector<Scalar> cu)
    : field(f), dim(d), basis_labels(std::move(labels)), mult(std::move(m)), unit(std::move(u)),
      comult(std::move(cm)), counit(std::move(cu)) {
    if (dim <= 0) throw BadPresentation("presentation dimension must be positive");
    if ((int)basis_labels.size() != dim || (int)mult.size() != dim || (int)comult.size() != dim ||
        (int)counit.size() != dim)
        throw BadPresentation("structure-constant table sizes do not match dim");
    for (auto& row : mult) {
        if ((int)row.size() != dim) throw BadPresentation("mult table is not dim x dim");
        for (auto& cell : row) prune(const_cast<SparseVec&>(cell));
    }
    prune(const_cast<SparseVec&>(this->unit));
}

bool BialgebraPresentation::structurally_equal(const BialgebraPresentation& o) const {
    return field == o.field && dim == o.dim && mult == o.mult && unit == o.unit &&
           comult == o.comult && counit == o.counit;
}

bool same_presentation(const PresPtr& a, const PresPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->structurally_equal(*b);
}

// TensorElement -----------------------------------------------------------

TensorElement::TensorElement(std::vector<PresPtr> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw SignatureMismatch("tensor element needs at least one factor");
    for (const auto& f : factors_)
        if (f->field != factors_[0]->field)
            throw FieldMismatch("tensor factors live over different fields");
}

TensorElement TensorElement::unit(std::vector<PresPtr> factors) {
    TensorElement u(std::move(factors));
    std::vector<std::pair<Key, Scalar>> acc{{Key{}, Scalar::one(u.field())}};
    for (const auto& p : u.factors_) {
        std::vector<std::pair<Key, Scalar>> next;
        for (const auto& [key, c] : acc)
            for (const auto& [i, ci] : p->unit) {
                Key k = key;
                k.push_back(i);
                next.emplace_back(std::move(k), c * ci);
            }
        acc = std::move(next);
    }
    for (auto& [k, c] : acc) u.add_term(k, c);
    return u;
}

const FieldSpec& TensorElement::field() const { return factors_[0]->field; }

void TensorElement::add_term(const Key& key, const Scalar& coeff) {
    if ((int)key.size() != arity()) throw SignatureMismatch("key arity mismatch");
    if (coeff.is_zero()) return;
    auto it = support_.find(key);
    if (it == support_.end()) {
        support_.emplace(key, coeff);
    } else {
        it->second = it->second + coeff;
        if (it->second.is_zero()) support_.erase(it);
    }
}

Scalar TensorElement::coeff(const Key& key) const {
    auto it = support_.find(key);
    return it == support_.end() ? Scalar::zero(field()) : it->second;
}

bool TensorElement::same_signature(const TensorElement& o) const {
    if (arity() != o.arity()) return false;
    for (int l = 0; l < arity(); ++l)
        if (!same_presentation(factors_[l], o.factors_[l])) return false;
    return true;
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
    if (!same_signature(o)) throw SignatureMismatch("adding elements of different signatures");
    TensorElement r = *this;
    for (const auto& [k, c] : o.support_) r.add_term(k, c);
    return r;
}

TensorElement TensorElement::operator-(const TensorElement& o) const {
    if (!same_signature(o)) throw SignatureMismatch("subtracting elements of different signatures");
    TensorElement r = *this;
    for (const auto& [k, c] : o.support_) r.add_term(k, -c);
    return r;
}

TensorElement TensorElement::operator-() const {
    TensorElement r(factors_);
    for (const auto& [k, c] : support_) r.support_.emplace(k, -c);
    return r;
}

TensorElement TensorElement::scaled(const Scalar& c) const {
    TensorElement r(factors_);
    if (c.is_zero()) return r;
    for (const auto& [k, x] : support_) r.support_.emplace(k, x * c);
    return r;
}

bool TensorElement::operator==(const TensorElement& o) const {
    return same_signature(o) && support_ == o.support_;
}

TensorElement TensorElement::retag(std::vector<PresPtr> factors) const {
    if (factors.size() != factors_.size()) throw SignatureMismatch("retag arity mismatch");
    for (size_t l = 0; l < factors.size(); ++l)
        if (factors[l]->dim != factors_[l]->dim || factors[l]->field != factors_[l]->field)
            throw SignatureMismatch("retag dimension/field mismatch");
    TensorElement r(std::move(factors));
    r.support_ = support_;
    return r;
}

std::string TensorElement::str() const {
    if (support_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, c] : support_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << c.str() << ")";
        for (size_t l = 0; l < k.size(); ++l)
            out << (l ? "(x)" : "*") << factors_[l]->basis_labels[k[l]];
    }
    return out.str();
}

long TensorElement::total_dim() const {
    long n = 1;
    for (const auto& f : factors_) n *= f->dim;
    return n;
}

linalg::Vec TensorElement::dense() const {
    linalg::Vec v(total_dim(), Scalar::zero(field()));
    for (const auto& [k, c] : support_) {
        long idx = 0;
        for (size_t l = 0; l < k.size(); ++l) idx = idx * factors_[l]->dim + k[l];
        v[idx] = c;
    }
    return v;
}

TensorElement TensorElement::from_dense(std::vector<PresPtr> factors, const linalg::Vec& v) {
    TensorElement t(std::move(factors));
    for (long idx = 0; idx < (long)v.size(); ++idx) {
        if (v[idx].is_zero()) continue;
        Key k(t.arity());
        long rem = idx;
        for (int l = t.arity() - 1; l >= 0; --l) {
            k[l] = (int)(rem % t.factors_[l]->dim);
            rem /= t.factors_[l]->dim;
        }
        t.support_.emplace(std::move(k), v[idx]);
    }
    return t;
}

TensorElement outer(const TensorElement& t, const TensorElement& u) {
    std::vector<PresPtr> factors = t.factors();
    factors.insert(factors.end(), u.factors().begin(), u.factors().end());
    TensorElement r(std::move(factors));
    for (const auto& [ka, ca] : t.support())
        for (const auto& [kb, cb] : u.support()) {
            TensorElement::Key k = ka;
            k.insert(k.end(), kb.begin(), kb.end());
            r.add_term(k, ca * cb);
        }
    return r;
}

TensorElement elem_mul(const TensorElement& s, const TensorElement& t) {
    if (!s.same_signature(t)) throw SignatureMismatch("multiplying elements of different signatures");
    TensorElement r(s.factors());
    const int k = s.arity();
    for (const auto& [ka, ca] : s.support())
        for (const auto& [kb, cb] : t.support()) {
            // legwise convolution through the mult tables
            std::vector<std::pair<TensorElement::Key, Scalar>> acc{{{}, ca * cb}};
            for (int l = 0; l < k; ++l) {
                const SparseVec& prod = s.factors()[l]->mult[ka[l]][kb[l]];
                if (prod.empty()) {
                    acc.clear();
                    break;
                }
                std::vector<std::pair<TensorElement::Key, Scalar>> next;
                next.reserve(acc.size() * prod.size());
                for (const auto& [key, c] : acc)
                    for (const auto& [i, ci] : prod) {
                        TensorElement::Key nk = key;
                        nk.push_back(i);
                        next.emplace_back(std::move(nk), c * ci);
                    }
                acc = std::move(next);
            }
            for (const auto& [key, c] : acc) r.add_term(key, c);
        }
    return r;
}

TensorElement elem_inv(const TensorElement& t) {
    const TensorElement one = TensorElement::unit(t.factors());
    // Unipotent shortcut: if s = 1 - t is nilpotent, t^{-1} = sum s^k.
    TensorElement s = one - t;
    if (!s.is_zero()) {
        TensorElement acc = one, pow = s;
        const int cap = 12;
        for (int step = 0; step < cap && !pow.is_zero(); ++step) {
            acc = acc + pow;
            pow = elem_mul(pow, s);
        }
        if (pow.is_zero()) {
            if (elem_mul(t, acc) == one && elem_mul(acc, t) == one) return acc;
        }
    } else {
        return one;
    }
    // Dense path: solve (left mult by t) u = 1, then check u t = 1.
    long n = t.total_dim();
    linalg::Mat m(n, linalg::Vec(n, Scalar::zero(t.field())));
    const auto& factors = t.factors();
    for (long col = 0; col < n; ++col) {
        TensorElement::Key k(factors.size());
        long rem = col;
        for (int l = (int)factors.size() - 1; l >= 0; --l) {
            k[l] = (int)(rem % factors[l]->dim);
            rem /= factors[l]->dim;
        }
        TensorElement basis(factors);
        basis.add_term(k, Scalar::one(t.field()));
        linalg::Vec img = elem_mul(t, basis).dense();
        for (long row = 0; row < n; ++row) m[row][col] = img[row];
    }
    auto sol = linalg::solve(m, one.dense());
    if (!sol) throw NotInvertible("no right inverse: " + t.str());
    TensorElement u = TensorElement::from_dense(factors, *sol);
    if (!(elem_mul(u, t) == one)) throw NotInvertible("right inverse is not two-sided: " + t.str());
    return u;
}

// LinearMap ---------------------------------------------------------------

LinearMap::LinearMap(PresPtr src, PresPtr tgt, linalg::Mat m)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
    if ((int)matrix.size() != target->dim) throw SignatureMismatch("linear map row count != target dim");
    for (const auto& row : matrix)
        if ((int)row.size() != source->dim) throw SignatureMismatch("linear map col count != source dim");
}

LinearMap LinearMap::identity(const PresPtr& p) {
    return LinearMap(p, p, linalg::identity(p->field, p->dim));
}

SparseVec LinearMap::image_of_basis(int j) const {
    SparseVec v;
    for (int i = 0; i < target->dim; ++i)
        if (!matrix[i][j].is_zero()) v[i] = matrix[i][j];
    return v;
}

TensorElement LinearMap::apply1(const TensorElement& t) const {
    if (t.arity() != 1 || !same_presentation(t.factors()[0], source))
        throw SignatureMismatch("apply1: source mismatch");
    TensorElement r({target});
    for (const auto& [k, c] : t.support())
        for (const auto& [i, ci] : image_of_basis(k[0])) r.add_term({i}, c * ci);
    return r;
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
    if (!same_presentation(inner.target, source))
        throw SignatureMismatch("compose: inner target != outer source");
    return LinearMap(inner.source, target, linalg::mat_mul(matrix, inner.matrix));
}

bool LinearMap::is_invertible() const {
    return source->dim == target->dim && linalg::inverse(matrix).has_value();
}

LinearMap LinearMap::inverse() const {
    auto inv = source->dim == target->dim ? linalg::inverse(matrix) : std::nullopt;
    if (!inv) throw NotInvertible("linear map is singular");
    return LinearMap(target, source, *inv);
}

bool LinearMap::operator==(const LinearMap& o) const {
    return same_presentation(source, o.source) && same_presentation(target, o.target) &&
           matrix == o.matrix;
}

// ValidationReport ---------------------------------------------------------

void ValidationReport::require(const std::string& name, bool pass, const std::string& residual) {
    entries.push_back({name, pass, residual});
}

bool ValidationReport::ok() const {
    return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.pass; });
}

std::string ValidationReport::first_failure() const {
    for (const auto& e : entries)
        if (!e.pass) return e.name + (e.residual.empty() ? "" : ": residual " + e.residual);
    return "";
}

std::string ValidationReport::str() const {
    std::ostringstream out;
    for (const auto& e : entries) {
        out << (e.pass ? "[ok]   " : "[FAIL] ") << e.name;
        if (!e.pass && !e.residual.empty()) out << "  residual: " << e.residual;
        out << "\n";
    }
    return out.str();
}

// Constructors and validators ----------------------------------------------

TensorElement basis_element(const PresPtr& p, int i) {
    TensorElement t({p});
    t.add_term({i}, Scalar::one(p->field));
    return t;
}

TensorElement unit_element(const PresPtr& p) { return TensorElement::unit({p}); }

TensorElement comult_of(const PresPtr& p, const TensorElement& t) {
    if (t.arity() != 1 || !same_presentation(t.factors()[0], p))
        throw SignatureMismatch("comult_of: element not over the presentation");
    TensorElement r({p, p});
    for (const auto& [k, c] : t.support())
        for (const auto& [jk, cjk] : p->comult[k[0]]) r.add_term({jk[0], jk[1]}, c * cjk);
    return r;
}

Scalar counit_of(const PresPtr& p, const TensorElement& t) {
    Scalar s = Scalar::zero(p->field);
    for (const auto& [k, c] : t.support()) s = s + c * p->counit[k[0]];
    return s;
}

ValidationReport validate_bialgebra(const PresPtr& p) {
    ValidationReport rep;
    const int d = p->dim;
    auto b = [&](int i) { return basis_element(p, i); };

    bool assoc = true;
    std::string assoc_res;
    for (int i = 0; i < d && assoc; ++i)
        for (int j = 0; j < d && assoc; ++j)
            for (int k = 0; k < d && assoc; ++k) {
                TensorElement lhs = elem_mul(elem_mul(b(i), b(j)), b(k));
                TensorElement rhs = elem_mul(b(i), elem_mul(b(j), b(k)));
                if (!(lhs == rhs)) {
                    assoc = false;
                    assoc_res = "(" + std::to_string(i) + "," + std::to_string(j) + "," +
                                std::to_string(k) + "): " + (lhs - rhs).str();
                }
            }
    rep.require("associativity", assoc, assoc_res);

    bool unital = true;
    std::string unital_res;
    TensorElement one = unit_element(p);
    for (int i = 0; i < d && unital; ++i) {
        if (!(elem_mul(one, b(i)) == b(i)) || !(elem_mul(b(i), one) == b(i))) {
            unital = false;
            unital_res = "basis " + std::to_string(i);
        }
    }
    rep.require("unitality", unital, unital_res);

    bool coassoc = true;
    std::string coassoc_res;
    for (int i = 0; i < d && coassoc; ++i) {
        TensorElement delta = comult_of(p, b(i));
        TensorElement lhs = leg_comult(delta, 1);
        TensorElement rhs = leg_comult(delta, 2);
        if (!(lhs == rhs)) {
            coassoc = false;
            coassoc_res = "basis " + std::to_string(i) + ": " + (lhs - rhs).str();
        }
    }
    rep.require("coassociativity", coassoc, coassoc_res);

    bool counital = true;
    std::string counital_res;
    for (int i = 0; i < d && counital; ++i) {
        TensorElement delta = comult_of(p, b(i));
        if (!(leg_counit(delta, {1}) == b(i)) || !(leg_counit(delta, {2}) == b(i))) {
            counital = false;
            counital_res = "basis " + std::to_string(i);
        }
    }
    rep.require("counitality", counital, counital_res);

    bool delta_alg = comult_of(p, one) == TensorElement::unit({p, p});
    std::string delta_res = delta_alg ? "" : "Delta(1) != 1(x)1";
    for (int i = 0; i < d && delta_alg; ++i)
        for (int j = 0; j < d && delta_alg; ++j) {
            TensorElement lhs = comult_of(p, elem_mul(b(i), b(j)));
            TensorElement rhs = elem_mul(comult_of(p, b(i)), comult_of(p, b(j)));
            if (!(lhs == rhs)) {
                delta_alg = false;
                delta_res = "(" + p->basis_labels[i] + "," + p->basis_labels[j] + "): " +
                            (lhs - rhs).str();
            }
        }
    rep.require("comultiplication is an algebra map", delta_alg, delta_res);

    bool eps_alg = counit_of(p, one).is_one();
    std::string eps_res = eps_alg ? "" : "eps(1) != 1";
    for (int i = 0; i < d && eps_alg; ++i)
        for (int j = 0; j < d && eps_alg; ++j) {
            Scalar lhs = counit_of(p, elem_mul(b(i), b(j)));
            Scalar rhs = p->counit[i] * p->counit[j];
            if (lhs != rhs) {
                eps_alg = false;
                eps_res = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            }
        }
    rep.require("counit is an algebra map", eps_alg, eps_res);
    return rep;
}

PresPtr tensor_bialgebra(const PresPtr& a, const PresPtr& b) {
    if (a->field != b->field) throw FieldMismatch("tensor product factors over different fields");
    const int da = a->dim, db = b->dim, d = da * db;
    auto idx = [&](int i, int j) { return i * db + j; };
    std::vector<std::string> labels(d);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j)
            labels[idx(i, j)] = a->basis_labels[i] + "(x)" + b->basis_labels[j];

    std::vector<std::vector<SparseVec>> mult(d, std::vector<SparseVec>(d));
    for (int i1 = 0; i1 < da; ++i1)
        for (int j1 = 0; j1 < db; ++j1)
            for (int i2 = 0; i2 < da; ++i2)
                for (int j2 = 0; j2 < db; ++j2) {
                    SparseVec& cell = mult[idx(i1, j1)][idx(i2, j2)];
                    for (const auto& [ia, ca] : a->mult[i1][i2])
                        for (const auto& [jb, cb] : b->mult[j1][j2]) cell[idx(ia, jb)] = ca * cb;
                }
    SparseVec unit;
    for (const auto& [i, ca] : a->unit)
        for (const auto& [j, cb] : b->unit) unit[idx(i, j)] = ca * cb;

    // Delta_{A(x)B} = (Id (x) tau (x) Id)(Delta_A (x) Delta_B)
    std::vector<Sparse2> comult(d);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) {
            Sparse2& cell = comult[idx(i, j)];
            for (const auto& [ab, ca] : a->comult[i])
                for (const auto& [cd, cb] : b->comult[j])
                    cell[{idx(ab[0], cd[0]), idx(ab[1], cd[1])}] = ca * cb;
        }
    std::vector<Scalar> counit(d, Scalar::zero(a->field));
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) counit[idx(i, j)] = a->counit[i] * b->counit[j];

    auto prod = std::make_shared<BialgebraPresentation>(a->field, d, std::move(labels),
                                                        std::move(mult), std::move(unit),
                                                        std::move(comult), std::move(counit));
    const_cast<BialgebraPresentation&>(*prod).tensor_factors = std::make_pair(a, b);
    return prod;
}

PresPtr opposite(const PresPtr& p) {
    std::vector<std::vector<SparseVec>> mult(p->dim, std::vector<SparseVec>(p->dim));
    for (int i = 0; i < p->dim; ++i)
        for (int j = 0; j < p->dim; ++j) mult[i][j] = p->mult[j][i];
    return std::make_shared<BialgebraPresentation>(p->field, p->dim, p->basis_labels,
                                                   std::move(mult), p->unit, p->comult, p->counit);
}

PresPtr coopposite(const PresPtr& p) {
    std::vector<Sparse2> comult(p->dim);
    for (int i = 0; i < p->dim; ++i)
        for (const auto& [jk, c] : p->comult[i]) comult[i][{jk[1], jk[0]}] = c;
    return std::make_shared<BialgebraPresentation>(p->field, p->dim, p->basis_labels, p->mult,
                                                   p->unit, std::move(comult), p->counit);
}

PresPtr base_field_presentation(const FieldSpec& f) {
    std::vector<std::vector<SparseVec>> mult(1, std::vector<SparseVec>(1));
    mult[0][0][0] = Scalar::one(f);
    SparseVec unit{{0, Scalar::one(f)}};
    std::vector<Sparse2> comult(1);
    comult[0][{0, 0}] = Scalar::one(f);
    return std::make_shared<BialgebraPresentation>(f, 1, std::vector<std::string>{"1"},
                                                   std::move(mult), std::move(unit),
                                                   std::move(comult),
                                                   std::vector<Scalar>{Scalar::one(f)});
}

// Leg calculus ---------------------------------------------------------------

TensorElement leg_embed(const TensorElement& t, const std::vector<PresPtr>& out_factors,
                        const std::vector<int>& positions) {
    if ((int)positions.size() != t.arity())
        throw BadPositions("leg_embed: positions count != element arity");
    for (size_t l = 0; l < positions.size(); ++l) {
        if (positions[l] < 1 || positions[l] > (int)out_factors.size())
            throw BadPositions("leg_embed: position out of range");
        if (l > 0 && positions[l] <= positions[l - 1])
            throw BadPositions("leg_embed: positions must be strictly increasing");
        if (!same_presentation(out_factors[positions[l] - 1], t.factors()[l]))
            throw BadPositions("leg_embed: factor mismatch at a position");
    }
    TensorElement r(out_factors);
    std::vector<int> pos0(positions.size());
    for (size_t l = 0; l < positions.size(); ++l) pos0[l] = positions[l] - 1;
    for (const auto& [key, c] : t.support()) {
        std::vector<std::pair<TensorElement::Key, Scalar>> acc{{{}, c}};
        size_t next_leg = 0;
        for (size_t pos = 0; pos < out_factors.size(); ++pos) {
            SparseVec fill;
            if (next_leg < pos0.size() && (int)pos == pos0[next_leg]) {
                fill[key[next_leg]] = Scalar::one(t.field());
                ++next_leg;
            } else {
                fill = out_factors[pos]->unit;
            }
            std::vector<std::pair<TensorElement::Key, Scalar>> next;
            for (const auto& [k, cc] : acc)
                for (const auto& [i, ci] : fill) {
                    TensorElement::Key nk = k;
                    nk.push_back(i);
                    next.emplace_back(std::move(nk), cc * ci);
                }
            acc = std::move(next);
        }
        for (const auto& [k, cc] : acc) r.add_term(k, cc);
    }
    return r;
}

TensorElement leg_embed(const TensorElement& t, int arity, const std::vector<int>& positions) {
    for (int l = 1; l < t.arity(); ++l)
        if (!same_presentation(t.factors()[l], t.factors()[0]))
            throw BadPositions("homogeneous leg_embed needs equal factors; pass the factor list");
    return leg_embed(t, std::vector<PresPtr>(arity, t.factors()[0]), positions);
}

TensorElement leg_flip(const TensorElement& t, int i, int j) {
    if (i < 1 || j < 1 || i > t.arity() || j > t.arity() || i == j)
        throw BadPositions("leg_flip: bad leg indices");
    std::vector<PresPtr> factors = t.factors();
    std::swap(factors[i - 1], factors[j - 1]);
    TensorElement r(std::move(factors));
    for (const auto& [k, c] : t.support()) {
        TensorElement::Key nk = k;
        std::swap(nk[i - 1], nk[j - 1]);
        r.add_term(nk, c);
    }
    return r;
}

TensorElement leg_counit(const TensorElement& t, const std::vector<int>& legs) {
    if (legs.empty()) throw BadPositions("leg_counit: empty leg set");
    std::vector<bool> drop(t.arity(), false);
    for (int l : legs) {
        if (l < 1 || l > t.arity()) throw BadPositions("leg_counit: leg out of range");
        drop[l - 1] = true;
    }
    if ((int)legs.size() == t.arity()) {
        // All legs dropped: keep a 1-leg element over the base-field
        // presentation rather than inventing an arity-0 element.
        PresPtr kk = base_field_presentation(t.field());
        TensorElement r({kk});
        Scalar total = Scalar::zero(t.field());
        for (const auto& [k, c] : t.support()) {
            Scalar s = c;
            for (int l = 0; l < t.arity(); ++l) s = s * t.factors()[l]->counit[k[l]];
            total = total + s;
        }
        r.add_term({0}, total);
        return r;
    }
    std::vector<PresPtr> factors;
    for (int l = 0; l < t.arity(); ++l)
        if (!drop[l]) factors.push_back(t.factors()[l]);
    TensorElement r(std::move(factors));
    for (const auto& [k, c] : t.support()) {
        Scalar s = c;
        TensorElement::Key nk;
        for (int l = 0; l < t.arity(); ++l) {
            if (drop[l])
                s = s * t.factors()[l]->counit[k[l]];
            else
                nk.push_back(k[l]);
        }
        r.add_term(nk, s);
    }
    return r;
}

TensorElement leg_comult(const TensorElement& t, int leg) {
    if (leg < 1 || leg > t.arity()) throw BadPositions("leg_comult: leg out of range");
    const int l0 = leg - 1;
    std::vector<PresPtr> factors = t.factors();
    factors.insert(factors.begin() + l0, t.factors()[l0]);
    TensorElement r(std::move(factors));
    for (const auto& [k, c] : t.support()) {
        const Sparse2& delta = t.factors()[l0]->comult[k[l0]];
        for (const auto& [jk, cd] : delta) {
            TensorElement::Key nk = k;
            nk[l0] = jk[0];
            nk.insert(nk.begin() + l0 + 1, jk[1]);
            r.add_term(nk, c * cd);
        }
    }
    return r;
}

TensorElement apply_maps(const TensorElement& t, const std::vector<std::optional<LinearMap>>& maps) {
    if ((int)maps.size() != t.arity()) throw SignatureMismatch("apply_maps: arity mismatch");
    std::vector<PresPtr> factors(t.arity());
    for (int l = 0; l < t.arity(); ++l) {
        if (maps[l]) {
            if (!same_presentation(maps[l]->source, t.factors()[l]))
                throw SignatureMismatch("apply_maps: map source mismatch on leg " + std::to_string(l + 1));
            factors[l] = maps[l]->target;
        } else {
            factors[l] = t.factors()[l];
        }
    }
    TensorElement r(std::move(factors));
    for (const auto& [k, c] : t.support()) {
        std::vector<std::pair<TensorElement::Key, Scalar>> acc{{{}, c}};
        for (int l = 0; l < t.arity(); ++l) {
            SparseVec img;
            if (maps[l])
                img = maps[l]->image_of_basis(k[l]);
            else
                img[k[l]] = Scalar::one(t.field());
            std::vector<std::pair<TensorElement::Key, Scalar>> next;
            for (const auto& [key, cc] : acc)
                for (const auto& [i, ci] : img) {
                    TensorElement::Key nk = key;
                    nk.push_back(i);
                    next.emplace_back(std::move(nk), cc * ci);
                }
            acc = std::move(next);
        }
        for (const auto& [key, cc] : acc) r.add_term(key, cc);
    }
    return r;
}

TensorElement split_leg(const TensorElement& t, int leg) {
    if (leg < 1 || leg > t.arity()) throw BadPositions("split_leg: leg out of range");
    const PresPtr& p = t.factors()[leg - 1];
    if (!p->tensor_factors) throw BadPositions("split_leg: factor is not a recorded tensor product");
    auto [a, b] = *p->tensor_factors;
    std::vector<PresPtr> factors = t.factors();
    factors[leg - 1] = a;
    factors.insert(factors.begin() + leg, b);
    TensorElement r(std::move(factors));
    const int db = b->dim;
    for (const auto& [k, c] : t.support()) {
        TensorElement::Key nk = k;
        int combined = k[leg - 1];
        nk[leg - 1] = combined / db;
        nk.insert(nk.begin() + leg, combined % db);
        r.add_term(nk, c);
    }
    return r;
}

TensorElement fuse_legs(const TensorElement& t, int leg, const PresPtr& product) {
    if (leg < 1 || leg + 1 > t.arity()) throw BadPositions("fuse_legs: legs out of range");
    if (!product->tensor_factors) throw BadPositions("fuse_legs: target is not a tensor product");
    auto [a, b] = *product->tensor_factors;
    if (!same_presentation(a, t.factors()[leg - 1]) || !same_presentation(b, t.factors()[leg]))
        throw BadPositions("fuse_legs: factor mismatch");
    std::vector<PresPtr> factors = t.factors();
    factors.erase(factors.begin() + leg);
    factors[leg - 1] = product;
    TensorElement r(std::move(factors));
    const int db = b->dim;
    for (const auto& [k, c] : t.support()) {
        TensorElement::Key nk = k;
        int fusedv = k[leg - 1] * db + k[leg];
        nk.erase(nk.begin() + leg);
        nk[leg - 1] = fusedv;
        r.add_term(nk, c);
    }
    return r;
}

bool is_central(const TensorElement& t) {
    // Commuting with every 1(x)..(x)e_i(x)..(x)1 generates commuting with the
    // whole tensor-product algebra.
    for (int l = 0; l < t.arity(); ++l) {
        const PresPtr& p = t.factors()[l];
        for (int i = 0; i < p->dim; ++i) {
            TensorElement gen = leg_embed(basis_element(p, i), t.factors(), {l + 1});
            if (!(elem_mul(gen, t) == elem_mul(t, gen))) return false;
        }
    }
    return true;
}

bool is_cocommutative(const PresPtr& p) {
    for (int i = 0; i < p->dim; ++i) {
        TensorElement d = comult_of(p, basis_element(p, i));
        if (!(leg_flip(d, 1, 2) == d)) return false;
    }
    return true;
}

}  // namespace twistlab

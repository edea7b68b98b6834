#include "twistlab/linalg.hpp"

namespace twistlab::linalg {

Mat identity(const FieldSpec& f, int n) {
    Mat m(n, Vec(n, Scalar::zero(f)));
    for (int i = 0; i < n; ++i) m[i][i] = Scalar::one(f);
    return m;
}

Vec mat_vec(const Mat& a, const Vec& x) {
    Vec r;
    r.reserve(a.size());
    for (const auto& row : a) {
        Scalar s = Scalar::zero(x.empty() ? FieldSpec::rational() : x[0].field());
        for (size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero() && !x[j].is_zero()) s = s + row[j] * x[j];
        r.push_back(s);
    }
    return r;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    const FieldSpec f = a[0][0].field();
    Mat r(n, Vec(m, Scalar::zero(f)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (size_t j = 0; j < m; ++j)
                if (!b[l][j].is_zero()) r[i][j] = r[i][j] + a[i][l] * b[l][j];
        }
    return r;
}

std::vector<int> rref(Mat& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    size_t rows = a.size(), cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Scalar inv = a[r][c].inv();
        for (size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Scalar f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
        }
        pivots.push_back((int)c);
        ++r;
    }
    return pivots;
}

int rank(Mat a) { return (int)rref(a).size(); }

std::optional<AffineSpace> solve_affine(const Mat& a, const Vec& b) {
    if (a.empty()) return AffineSpace{Vec{}, {}};
    size_t rows = a.size(), cols = a[0].size();
    const FieldSpec f = b.empty() ? (cols ? a[0][0].field() : FieldSpec::rational()) : b[0].field();
    Mat aug(rows, Vec(cols + 1, Scalar::zero(f)));
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        aug[i][cols] = b[i];
    }
    std::vector<int> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == (int)cols) return std::nullopt;  // inconsistent
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    Vec origin(cols, Scalar::zero(f));
    for (size_t k = 0; k < pivots.size(); ++k) origin[pivots[k]] = aug[k][cols];
    AffineSpace sp{std::move(origin), {}};
    for (size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        Vec dir(cols, Scalar::zero(f));
        dir[c] = Scalar::one(f);
        for (size_t k = 0; k < pivots.size(); ++k) dir[pivots[k]] = -aug[k][c];
        sp.directions.push_back(std::move(dir));
    }
    return sp;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
    auto sp = solve_affine(a, b);
    if (!sp) return std::nullopt;
    return sp->origin;
}

std::vector<Vec> nullspace(const Mat& a) {
    if (a.empty()) return {};
    Vec zero(a.size(), Scalar::zero(a[0].empty() ? FieldSpec::rational() : a[0][0].field()));
    return solve_affine(a, zero)->directions;
}

std::optional<Mat> inverse(const Mat& a) {
    size_t n = a.size();
    const FieldSpec f = a[0][0].field();
    Mat aug(n, Vec(2 * n, Scalar::zero(f)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = Scalar::one(f);
    }
    auto pivots = rref(aug);
    if (pivots.size() != n || pivots.back() != (int)n - 1) return std::nullopt;
    Mat inv(n, Vec(n, Scalar::zero(f)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

}  // namespace twistlab::linalg

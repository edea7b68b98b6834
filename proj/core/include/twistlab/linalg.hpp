#pragma once

#include <optional>
#include <vector>

#include "twistlab/scalar.hpp"

namespace twistlab::linalg {

using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>;  // row-major

Mat identity(const FieldSpec& f, int n);
Vec mat_vec(const Mat& a, const Vec& x);
Mat mat_mul(const Mat& a, const Mat& b);

// Reduced row echelon form in place; returns pivot column indices.
std::vector<int> rref(Mat& a);

int rank(Mat a);

// Solves A x = b; nullopt when inconsistent.
std::optional<Vec> solve(const Mat& a, const Vec& b);

// Basis of the nullspace of A.
std::vector<Vec> nullspace(const Mat& a);

// Particular solution + nullspace basis of A x = b; nullopt when inconsistent.
struct AffineSpace {
    Vec origin;
    std::vector<Vec> directions;
};
std::optional<AffineSpace> solve_affine(const Mat& a, const Vec& b);

std::optional<Mat> inverse(const Mat& a);

}  // namespace twistlab::linalg

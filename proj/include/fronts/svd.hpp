#pragma once

#include "fronts/matrix.hpp"

#include <vector>

namespace fronts {

// Thin SVD A = U diag(sigma) V^T with sigma sorted descending.
// U is rows(A) x k, V is cols(A) x k, k = min(rows, cols).
struct SvdResult {
    std::vector<double> sigma;
    Matrix u;
    Matrix v;
};

// One-sided Jacobi (Hestenes) orthogonalization. Accurate to ~1e-10 on
// sigma for dense matrices up to 512x512, which covers the contingency
// tables this project feeds it.
SvdResult jacobi_svd(const Matrix& a);

} // namespace fronts

#include "fronts/svd.hpp"

#include "fronts/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fronts {

namespace {

// One-sided Jacobi on a tall matrix (rows >= cols): rotates column pairs
// until all columns are mutually orthogonal, then reads singular values off
// the column norms.
SvdResult jacobi_tall(Matrix a) {
    const size_t m = a.rows(), n = a.cols();
    Matrix v(n, n, 0.0);
    for (size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    const double eps = 1e-15;
    const int max_sweeps = 60;
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (size_t p = 0; p + 1 < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                double app = 0, aqq = 0, apq = 0;
                for (size_t i = 0; i < m; ++i) {
                    double x = a(i, p), y = a(i, q);
                    app += x * x;
                    aqq += y * y;
                    apq += x * y;
                }
                if (std::abs(apq) <= eps * std::sqrt(app * aqq) || apq == 0.0)
                    continue;
                converged = false;
                double tau = (aqq - app) / (2.0 * apq);
                double t = (tau >= 0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (size_t i = 0; i < m; ++i) {
                    double x = a(i, p), y = a(i, q);
                    a(i, p) = c * x - s * y;
                    a(i, q) = s * x + c * y;
                }
                for (size_t i = 0; i < n; ++i) {
                    double x = v(i, p), y = v(i, q);
                    v(i, p) = c * x - s * y;
                    v(i, q) = s * x + c * y;
                }
            }
        }
    }
    if (!converged)
        throw NumericError("jacobi_svd did not converge");

    std::vector<double> sigma(n);
    for (size_t j = 0; j < n; ++j) {
        double norm2 = 0;
        for (size_t i = 0; i < m; ++i) norm2 += a(i, j) * a(i, j);
        sigma[j] = std::sqrt(norm2);
    }

    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t x, size_t y) { return sigma[x] > sigma[y]; });

    SvdResult res;
    res.sigma.resize(n);
    res.u = Matrix(m, n);
    res.v = Matrix(n, n);
    for (size_t k = 0; k < n; ++k) {
        size_t j = order[k];
        res.sigma[k] = sigma[j];
        if (sigma[j] > 0) {
            for (size_t i = 0; i < m; ++i) res.u(i, k) = a(i, j) / sigma[j];
        }
        for (size_t i = 0; i < n; ++i) res.v(i, k) = v(i, j);
    }
    return res;
}

} // namespace

SvdResult jacobi_svd(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0)
        throw NumericError("jacobi_svd: empty matrix");
    if (a.rows() >= a.cols())
        return jacobi_tall(a);
    SvdResult t = jacobi_tall(a.transposed());
    SvdResult res;
    res.sigma = std::move(t.sigma);
    res.u = std::move(t.v);
    res.v = std::move(t.u);
    return res;
}

} // namespace fronts

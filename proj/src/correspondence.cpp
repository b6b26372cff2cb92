#include "fronts/correspondence.hpp"

#include "fronts/errors.hpp"
#include "fronts/svd.hpp"

#include <cmath>
#include <string>

namespace fronts {

CaModel correspondence_analysis(const Matrix& counts, double tol) {
    const size_t nr = counts.rows(), nc = counts.cols();
    if (nr == 0 || nc == 0)
        throw DataError("correspondence_analysis: empty table");

    double n = 0.0;
    for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nc; ++j) {
            if (counts(i, j) < 0)
                throw DataError("correspondence_analysis: negative count at row " +
                                std::to_string(i) + ", column " + std::to_string(j));
            n += counts(i, j);
        }
    if (n <= 0)
        throw DataError("correspondence_analysis: table sums to zero");

    CaModel model;
    model.row_masses.assign(nr, 0.0);
    model.col_masses.assign(nc, 0.0);
    for (size_t i = 0; i < nr; ++i)
        for (size_t j = 0; j < nc; ++j) {
            double p = counts(i, j) / n;
            model.row_masses[i] += p;
            model.col_masses[j] += p;
        }
    for (size_t i = 0; i < nr; ++i)
        if (model.row_masses[i] == 0.0)
            throw DataError("correspondence_analysis: row " + std::to_string(i) + " is all zero");
    for (size_t j = 0; j < nc; ++j)
        if (model.col_masses[j] == 0.0)
            throw DataError("correspondence_analysis: column " + std::to_string(j) +
                            " is all zero");

    // standardized residuals S = Dr^-1/2 (P - r c^T) Dc^-1/2
    Matrix s(nr, nc);
    for (size_t i = 0; i < nr; ++i) {
        double ri = model.row_masses[i];
        for (size_t j = 0; j < nc; ++j) {
            double cj = model.col_masses[j];
            s(i, j) = (counts(i, j) / n - ri * cj) / std::sqrt(ri * cj);
        }
    }

    SvdResult svd = jacobi_svd(s);

    size_t ndim = 0;
    while (ndim < svd.sigma.size() && svd.sigma[ndim] >= tol) ++ndim;
    const size_t max_dim = std::min(nr, nc) - 1;
    if (ndim > max_dim) ndim = max_dim; // trailing structural zero dimension

    // sign convention on the left singular vectors
    for (size_t k = 0; k < ndim; ++k) {
        size_t arg = 0;
        double best = -1.0;
        for (size_t i = 0; i < nr; ++i) {
            double mag = std::abs(svd.u(i, k));
            if (mag > best) { // strict: magnitude ties keep the lower index
                best = mag;
                arg = i;
            }
        }
        if (svd.u(arg, k) < 0) {
            for (size_t i = 0; i < nr; ++i) svd.u(i, k) = -svd.u(i, k);
            for (size_t j = 0; j < nc; ++j) svd.v(j, k) = -svd.v(j, k);
        }
    }

    model.singular_values.assign(svd.sigma.begin(), svd.sigma.begin() + static_cast<long>(ndim));
    model.row_principal = Matrix(nr, ndim);
    model.col_principal = Matrix(nc, ndim);
    for (size_t k = 0; k < ndim; ++k) {
        double sigma = svd.sigma[k];
        for (size_t i = 0; i < nr; ++i)
            model.row_principal(i, k) = svd.u(i, k) * sigma / std::sqrt(model.row_masses[i]);
        for (size_t j = 0; j < nc; ++j)
            model.col_principal(j, k) = svd.v(j, k) * sigma / std::sqrt(model.col_masses[j]);
        model.total_inertia += sigma * sigma;
    }
    return model;
}

CaProjection project_2d(const CaModel& model) {
    if (model.dimensions() == 0)
        throw NumericError("project_2d: model has zero dimensions");
    CaProjection proj;
    const size_t nr = model.row_principal.rows();
    const size_t nc = model.col_principal.rows();
    auto axis = [&](const Matrix& coords, size_t i, size_t k) {
        return k < model.dimensions() ? coords(i, k) : 0.0;
    };
    proj.rows.reserve(nr);
    for (size_t i = 0; i < nr; ++i)
        proj.rows.push_back({axis(model.row_principal, i, 0), axis(model.row_principal, i, 1)});
    proj.cols.reserve(nc);
    for (size_t j = 0; j < nc; ++j)
        proj.cols.push_back({axis(model.col_principal, j, 0), axis(model.col_principal, j, 1)});
    for (size_t k = 0; k < 2 && k < model.dimensions(); ++k)
        proj.explained[k] = model.singular_values[k] * model.singular_values[k] /
                            model.total_inertia;
    return proj;
}

} // namespace fronts

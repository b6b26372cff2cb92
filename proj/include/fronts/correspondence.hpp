#pragma once

#include "fronts/matrix.hpp"

#include <array>
#include <vector>

namespace fronts {

// Correspondence-analysis decomposition of a contingency table. Coordinates
// are principal (mass-weighted means are zero on every axis); total inertia
// equals chi-square / n.
struct CaModel {
    std::vector<double> row_masses;
    std::vector<double> col_masses;
    std::vector<double> singular_values; // descending, values below tol dropped
    Matrix row_principal;                // rows x ndim
    Matrix col_principal;                // cols x ndim
    double total_inertia = 0.0;

    size_t dimensions() const { return singular_values.size(); }
};

// Standard CA: P = counts/n, S = Dr^-1/2 (P - r c^T) Dc^-1/2, SVD of S.
// Sign convention: in each left singular vector the entry of largest
// magnitude is positive (magnitude ties break toward the lower index).
// Throws DataError on a zero row/column or an all-zero table.
CaModel correspondence_analysis(const Matrix& counts, double tol = 1e-12);

struct CaProjection {
    std::vector<std::array<double, 2>> rows;
    std::vector<std::array<double, 2>> cols;
    std::array<double, 2> explained = {0.0, 0.0}; // inertia fraction per axis
};

// First two principal axes; the second axis is all zero when the model has
// one dimension. Throws NumericError on a zero-dimension model.
CaProjection project_2d(const CaModel& model);

} // namespace fronts

// SPDX-License-Identifier: Apache-2.0
/// @file csr_matrix.hpp
/// @brief Sparse symmetric matrix in compressed sparse row form.

#ifndef KCERT_CSR_MATRIX_HPP
#define KCERT_CSR_MATRIX_HPP

#include <span>
#include <vector>

#include "vec.hpp"

namespace kcert {

/// Square symmetric sparse matrix. Both triangles are stored explicitly;
/// column indices are strictly increasing within each row.
struct CsrMatrix {
    int n = 0;
    std::vector<int> row_offsets;   ///< size n + 1
    std::vector<int> col_indices;   ///< size nnz
    std::vector<double> values;     ///< size nnz

    int nnz() const { return static_cast<int>(col_indices.size()); }

    /// y = A * x (no allocation; dimensions must match)
    void multiply(std::span<const double> x, std::span<double> y) const;
};

/// y = A * v with dimension checking.
Vec matvec(const CsrMatrix& a, std::span<const double> v);

/// v' * A * v accumulated row by row, left to right.
double quadratic_form(const CsrMatrix& a, std::span<const double> v);

/// Build a CsrMatrix from a dense row-major symmetric matrix (test helper).
CsrMatrix csr_from_dense(int n, std::span<const double> dense);

} // namespace kcert

#endif // KCERT_CSR_MATRIX_HPP

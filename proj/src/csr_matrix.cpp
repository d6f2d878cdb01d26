// SPDX-License-Identifier: Apache-2.0

#include "csr_matrix.hpp"

#include "error.hpp"

namespace kcert {

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int p = row_offsets[i]; p < row_offsets[i + 1]; ++p) {
            s += values[p] * x[col_indices[p]];
        }
        y[i] = s;
    }
}

Vec matvec(const CsrMatrix& a, std::span<const double> v) {
    if (static_cast<int>(v.size()) != a.n) {
        throw Error(ErrorCode::Dimension, "matvec: vector length " +
                                              std::to_string(v.size()) +
                                              " does not match matrix dimension " +
                                              std::to_string(a.n));
    }
    Vec y(a.n);
    a.multiply(v, y);
    return y;
}

double quadratic_form(const CsrMatrix& a, std::span<const double> v) {
    if (static_cast<int>(v.size()) != a.n) {
        throw Error(ErrorCode::Dimension,
                    "quadratic_form: vector length does not match matrix dimension");
    }
    double total = 0.0;
    for (int i = 0; i < a.n; ++i) {
        double row = 0.0;
        for (int p = a.row_offsets[i]; p < a.row_offsets[i + 1]; ++p) {
            row += a.values[p] * v[a.col_indices[p]];
        }
        total += v[i] * row;
    }
    return total;
}

CsrMatrix csr_from_dense(int n, std::span<const double> dense) {
    CsrMatrix a;
    a.n = n;
    a.row_offsets.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (dense[static_cast<std::size_t>(i) * n + j] != 0.0) {
                a.col_indices.push_back(j);
                a.values.push_back(dense[static_cast<std::size_t>(i) * n + j]);
            }
        }
        a.row_offsets[i + 1] = static_cast<int>(a.col_indices.size());
    }
    return a;
}

} // namespace kcert

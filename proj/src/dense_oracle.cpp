// SPDX-License-Identifier: Apache-2.0
/// @file dense_oracle.cpp

#include "dense_oracle.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "error.hpp"

namespace kcert {

namespace {

/// b - A*x with long double accumulation, the residual feeding iterative
/// refinement.
Vec refined_residual(const DenseSym& a, std::span<const double> x,
                     std::span<const double> b) {
    const int n = a.n;
    Vec r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        long double acc = b[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            acc -= static_cast<long double>(a.at(i, j)) *
                   static_cast<long double>(x[static_cast<std::size_t>(j)]);
        }
        r[static_cast<std::size_t>(i)] = static_cast<double>(acc);
    }
    return r;
}

/// Lower-triangular Cholesky factor stored densely; throws when a pivot is
/// not strictly positive.
std::vector<double> cholesky_factor(const DenseSym& a) {
    const int n = a.n;
    std::vector<double> l(a.a);
    for (int j = 0; j < n; ++j) {
        double d = l[static_cast<std::size_t>(j) * n + j];
        for (int t = 0; t < j; ++t) {
            const double ljt = l[static_cast<std::size_t>(j) * n + t];
            d -= ljt * ljt;
        }
        if (!(d > 0.0)) {
            throw Error(ErrorCode::NotPositiveDefinite,
                        "exact_solve: Cholesky pivot " + std::to_string(j) +
                            " is not positive");
        }
        const double ljj = std::sqrt(d);
        l[static_cast<std::size_t>(j) * n + j] = ljj;
        for (int i = j + 1; i < n; ++i) {
            double s = l[static_cast<std::size_t>(i) * n + j];
            for (int t = 0; t < j; ++t) {
                s -= l[static_cast<std::size_t>(i) * n + t] *
                     l[static_cast<std::size_t>(j) * n + t];
            }
            l[static_cast<std::size_t>(i) * n + j] = s / ljj;
        }
    }
    return l;
}

Vec cholesky_solve(const std::vector<double>& l, int n,
                   std::span<const double> b) {
    Vec y(b.begin(), b.end());
    for (int i = 0; i < n; ++i) {
        double s = y[static_cast<std::size_t>(i)];
        for (int t = 0; t < i; ++t) {
            s -= l[static_cast<std::size_t>(i) * n + t] *
                 y[static_cast<std::size_t>(t)];
        }
        y[static_cast<std::size_t>(i)] = s / l[static_cast<std::size_t>(i) * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = y[static_cast<std::size_t>(i)];
        for (int t = i + 1; t < n; ++t) {
            s -= l[static_cast<std::size_t>(t) * n + i] *
                 y[static_cast<std::size_t>(t)];
        }
        y[static_cast<std::size_t>(i)] = s / l[static_cast<std::size_t>(i) * n + i];
    }
    return y;
}

/// x^T A y accumulated in long double; bilinear forms of small error
/// vectors keep full relative accuracy this way.
long double bilinear_form(const DenseSym& a, std::span<const double> x,
                          std::span<const double> y) {
    long double total = 0.0L;
    for (int i = 0; i < a.n; ++i) {
        long double row = 0.0L;
        for (int j = 0; j < a.n; ++j) {
            row += static_cast<long double>(a.at(i, j)) *
                   static_cast<long double>(y[static_cast<std::size_t>(j)]);
        }
        total += static_cast<long double>(x[static_cast<std::size_t>(i)]) * row;
    }
    return total;
}

} // namespace

DenseSym::DenseSym(int dim) : n(dim) {
    if (dim < 1) {
        throw Error(ErrorCode::InvalidArgument,
                    "DenseSym: dimension must be positive");
    }
    if (dim > kOracleMaxN) {
        throw Error(ErrorCode::TooLarge,
                    "DenseSym: refusing to densify n = " + std::to_string(dim) +
                        " (cap " + std::to_string(kOracleMaxN) + ")");
    }
    a.assign(static_cast<std::size_t>(dim) * dim, 0.0);
}

DenseSym DenseSym::from_csr(const CsrMatrix& m) {
    DenseSym d(m.n);
    for (int i = 0; i < m.n; ++i) {
        for (int idx = m.row_offsets[static_cast<std::size_t>(i)];
             idx < m.row_offsets[static_cast<std::size_t>(i) + 1]; ++idx) {
            d.at(i, m.col_indices[static_cast<std::size_t>(idx)]) =
                m.values[static_cast<std::size_t>(idx)];
        }
    }
    return d;
}

Vec DenseSym::multiply(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n) {
        throw Error(ErrorCode::Dimension,
                    "DenseSym::multiply: dimension mismatch");
    }
    Vec y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += at(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

SymTridiagonal householder_tridiagonalize(DenseSym a) {
    const int n = a.n;
    SymTridiagonal t;
    t.diag.resize(static_cast<std::size_t>(n));
    if (n > 1) t.off.resize(static_cast<std::size_t>(n) - 1);

    std::vector<double> u(static_cast<std::size_t>(n));
    std::vector<double> q(static_cast<std::size_t>(n));
    for (int k = 0; k + 2 < n; ++k) {
        // Column segment to eliminate: a(k+1..n-1, k).
        double sigma_sq = 0.0;
        for (int i = k + 1; i < n; ++i) {
            const double v = a.at(i, k);
            sigma_sq += v * v;
        }
        const double x0 = a.at(k + 1, k);
        const double sigma = std::sqrt(sigma_sq);
        if (sigma == 0.0) {
            t.off[static_cast<std::size_t>(k)] = 0.0;
            continue;
        }
        // Reflector u = x - alpha*e1 with alpha opposite in sign to x0:
        // u's leading entry is x0 - alpha = sign(x0)(|x0| + sigma), formed
        // without cancellation.
        const double alpha = (x0 >= 0.0) ? -sigma : sigma;
        const double h = sigma_sq - alpha * x0;  // u^T u / 2
        for (int i = k + 1; i < n; ++i) u[static_cast<std::size_t>(i)] = a.at(i, k);
        u[static_cast<std::size_t>(k) + 1] = x0 - alpha;

        // p = A u / h on the trailing block, then q = p - (u^T p / 2h) u;
        // the similarity update is A <- A - u q^T - q u^T.
        double upk = 0.0;
        for (int i = k + 1; i < n; ++i) {
            double s = 0.0;
            for (int j = k + 1; j < n; ++j) {
                s += a.at(i, j) * u[static_cast<std::size_t>(j)];
            }
            q[static_cast<std::size_t>(i)] = s / h;
            upk += u[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(i)];
        }
        const double kappa = upk / (2.0 * h);
        for (int i = k + 1; i < n; ++i) {
            q[static_cast<std::size_t>(i)] -= kappa * u[static_cast<std::size_t>(i)];
        }
        for (int i = k + 1; i < n; ++i) {
            const double ui = u[static_cast<std::size_t>(i)];
            const double qi = q[static_cast<std::size_t>(i)];
            for (int j = k + 1; j <= i; ++j) {
                const double v = a.at(i, j) - ui * q[static_cast<std::size_t>(j)] -
                                 qi * u[static_cast<std::size_t>(j)];
                a.at(i, j) = v;
                a.at(j, i) = v;
            }
        }
        a.at(k + 1, k) = alpha;
        a.at(k, k + 1) = alpha;
        t.off[static_cast<std::size_t>(k)] = alpha;
    }
    for (int i = 0; i < n; ++i) t.diag[static_cast<std::size_t>(i)] = a.at(i, i);
    if (n > 1) t.off[static_cast<std::size_t>(n) - 2] = a.at(n - 1, n - 2);
    return t;
}

std::vector<double> dense_eigenvalues(const DenseSym& a) {
    return tridiagonal_eigenvalues(householder_tridiagonalize(a));
}

Vec exact_solve(const DenseSym& a, std::span<const double> b) {
    const int n = a.n;
    if (static_cast<int>(b.size()) != n) {
        throw Error(ErrorCode::Dimension, "exact_solve: dimension mismatch");
    }
    const std::vector<double> l = cholesky_factor(a);
    Vec x = cholesky_solve(l, n, b);
    for (int pass = 0; pass < 2; ++pass) {
        const Vec r = refined_residual(a, x, b);
        const Vec dx = cholesky_solve(l, n, r);
        for (int i = 0; i < n; ++i) {
            x[static_cast<std::size_t>(i)] += dx[static_cast<std::size_t>(i)];
        }
    }
    return x;
}

TrueErrors true_errors(const DenseSym& a, std::span<const double> x_true,
                       std::span<const double> x_k) {
    const int n = a.n;
    if (static_cast<int>(x_true.size()) != n ||
        static_cast<int>(x_k.size()) != n) {
        throw Error(ErrorCode::Dimension, "true_errors: dimension mismatch");
    }
    Vec e(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        e[static_cast<std::size_t>(i)] =
            x_true[static_cast<std::size_t>(i)] - x_k[static_cast<std::size_t>(i)];
    }
    TrueErrors out;
    const long double e_asq = bilinear_form(a, e, e);
    const long double x_asq = bilinear_form(a, x_true, x_true);
    out.anorm = std::sqrt(static_cast<double>(e_asq < 0.0L ? 0.0L : e_asq));
    out.l2 = norm(e);
    const double x_anorm = std::sqrt(static_cast<double>(x_asq < 0.0L ? 0.0L : x_asq));
    const double x_l2 = norm(x_true);
    out.rel_anorm = x_anorm > 0.0 ? out.anorm / x_anorm : 0.0;
    out.rel_l2 = x_l2 > 0.0 ? out.l2 / x_l2 : 0.0;
    return out;
}

Vec smallest_eigenvector(const DenseSym& a, double lambda1, double lambda2) {
    const int n = a.n;
    if (!(lambda2 >= lambda1)) {
        throw Error(ErrorCode::InvalidArgument,
                    "smallest_eigenvector: eigenvalues out of order");
    }
    double gap = lambda2 - lambda1;
    if (gap <= 0.0) {
        // Degenerate smallest eigenvalue: any unit vector of the eigenspace
        // qualifies; use a tiny synthetic gap to keep the shift definite.
        gap = std::max(std::abs(lambda1), 1.0) * 1e-9;
    }
    const double sigma = lambda1 - 0.5 * gap;

    DenseSym shifted = a;
    for (int i = 0; i < n; ++i) shifted.at(i, i) -= sigma;
    const std::vector<double> l = cholesky_factor(shifted);

    Vec v(static_cast<std::size_t>(n), 1.0);
    double scale = 1.0 / norm(v);
    for (auto& vi : v) vi *= scale;
    for (int it = 0; it < 40; ++it) {
        v = cholesky_solve(l, n, v);
        scale = 1.0 / norm(v);
        for (auto& vi : v) vi *= scale;
    }

    // Deterministic sign: largest-magnitude component positive.
    int imax = 0;
    for (int i = 1; i < n; ++i) {
        if (std::abs(v[static_cast<std::size_t>(i)]) >
            std::abs(v[static_cast<std::size_t>(imax)])) {
            imax = i;
        }
    }
    if (v[static_cast<std::size_t>(imax)] < 0.0) {
        for (auto& vi : v) vi = -vi;
    }
    return v;
}

} // namespace kcert

// SPDX-License-Identifier: Apache-2.0
/// @file dense_oracle.hpp
/// @brief Dense reference computations: Householder tridiagonalization,
///        full spectra, exact solves, and true error evaluation.
///
/// Everything here is O(n^2) storage and up to O(n^3) time by design. It
/// establishes ground truth for tests and validation runs and never enters
/// the per-iteration estimator path, which must stay much cheaper than the
/// CG iteration hosting it.

#ifndef KCERT_DENSE_ORACLE_HPP
#define KCERT_DENSE_ORACLE_HPP

#include <span>
#include <vector>

#include "csr_matrix.hpp"
#include "tridiagonal.hpp"
#include "vec.hpp"

namespace kcert {

/// Hard cap for densified validation work.
inline constexpr int kOracleMaxN = 5000;

/// Dense symmetric matrix, full row-major storage.
struct DenseSym {
    int n = 0;
    std::vector<double> a;

    DenseSym() = default;
    explicit DenseSym(int dim);

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const {
        return a[static_cast<std::size_t>(i) * n + j];
    }

    /// Densify a sparse matrix; refuses n > kOracleMaxN.
    static DenseSym from_csr(const CsrMatrix& m);

    Vec multiply(std::span<const double> x) const;
};

/// Reduce to symmetric tridiagonal form by Householder similarity
/// transformations. The reflector direction takes the sign opposite the
/// leading entry of the eliminated column, so forming it never cancels;
/// the spectrum is identical either way.
SymTridiagonal householder_tridiagonalize(DenseSym a);

/// Full spectrum, ascending: Householder reduction followed by one Sturm
/// bisection per eigenvalue on the tridiagonal form.
std::vector<double> dense_eigenvalues(const DenseSym& a);

/// Dense Cholesky solve followed by two iterative-refinement passes with
/// extended-precision residual accumulation, so the returned solution is
/// trustworthy as "truth" even at condition numbers around 1e5..1e6.
/// Throws NotPositiveDefinite when a pivot fails.
Vec exact_solve(const DenseSym& a, std::span<const double> b);

struct TrueErrors {
    double anorm = 0.0;      ///< ||x_true - x_k||_A
    double l2 = 0.0;         ///< ||x_true - x_k||
    double rel_anorm = 0.0;  ///< anorm / ||x_true||_A
    double rel_l2 = 0.0;     ///< l2 / ||x_true||
};

TrueErrors true_errors(const DenseSym& a, std::span<const double> x_true,
                       std::span<const double> x_k);

/// Unit eigenvector of the smallest eigenvalue via inverse iteration shifted
/// to the midpoint below the gap (sigma = lambda1 - (lambda2 - lambda1)/2),
/// which keeps the shifted matrix positive definite and the convergence
/// ratio at most 1/3 per step independent of the gap size. The sign is fixed
/// so the largest-magnitude component is positive.
Vec smallest_eigenvector(const DenseSym& a, double lambda1, double lambda2);

} // namespace kcert

#endif // KCERT_DENSE_ORACLE_HPP

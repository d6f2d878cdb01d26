// SPDX-License-Identifier: Apache-2.0
/// @file tridiagonal.hpp
/// @brief Symmetric tridiagonal matrices: Sturm counts, LDL' solves,
///        extremal eigenvalues, and quadrature-rule extensions.

#ifndef KCERT_TRIDIAGONAL_HPP
#define KCERT_TRIDIAGONAL_HPP

#include <vector>

#include "vec.hpp"

namespace kcert {

/// Symmetric tridiagonal matrix stored as diagonal + off-diagonal bands.
/// Matrices built from CG coefficients have strictly positive off-diagonals;
/// Householder reduction may produce either sign (eigenvalues do not care).
struct SymTridiagonal {
    std::vector<double> diag;   ///< size k
    std::vector<double> off;    ///< size k - 1 (empty when k <= 1)

    int dim() const { return static_cast<int>(diag.size()); }

    /// max_i sum_j |a_ij|
    double inf_norm() const;

    /// Interval [lo, hi] certain to contain every eigenvalue.
    void gershgorin(double& lo, double& hi) const;

    /// Leading principal submatrix of order m.
    SymTridiagonal leading(int m) const;
};

/// Number of eigenvalues of J strictly below sigma, by the sign count of the
/// LDL' pivots of J - sigma*I. Pivots inside the +-2^-52 * ||J|| guard band
/// are treated as negative (ties at an exact eigenvalue count as below).
int sturm_count(const SymTridiagonal& j, double sigma);

struct ExtremalPair {
    double smallest = 0.0;
    double largest = 0.0;
};

/// Smallest and largest eigenvalue, bisected from the Gershgorin interval to
/// an absolute width of rel_tol * (interval width). The reported smallest is
/// the certified lower bracket end (never above the true eigenvalue) and the
/// reported largest the certified upper end, so downstream node placement
/// never lands inside the spectrum by a tolerance artifact.
ExtremalPair extremal_eigenvalues(const SymTridiagonal& j, double rel_tol = 1e-10);

/// Smallest eigenvalue located inside a caller-supplied bracket; used by the
/// solver to warm-start from the previous iteration (interlacing guarantees
/// the new value sits below the old one). Bisection with a safeguarded Newton
/// step on the last LDL pivot; every accepted point is Sturm-certified.
/// If count(hi) == 0 the eigenvalue is clamped to hi; if count(lo) > 0 the
/// bracket is grown down to the Gershgorin bound.
double smallest_eigenvalue(const SymTridiagonal& j, double lo, double hi,
                           double tol_abs);

/// Mirror image of smallest_eigenvalue for the largest eigenvalue.
double largest_eigenvalue(const SymTridiagonal& j, double lo, double hi,
                          double tol_abs);

/// All eigenvalues in ascending order, each bisected to
/// rel_tol * (Gershgorin width). Used by the dense oracle and for spectra of
/// CG-derived matrices; O(k^2 log(1/rel_tol)).
std::vector<double> tridiagonal_eigenvalues(const SymTridiagonal& j,
                                            double rel_tol = 1e-12);

/// LDL' factorization of J - shift*I (no pivoting).
struct LdlFactor {
    std::vector<double> pivots;       ///< D
    std::vector<double> multipliers;  ///< subdiagonal of unit L
};

LdlFactor ldl_factor(const SymTridiagonal& j, double shift = 0.0);

Vec ldl_solve_factored(const LdlFactor& f, Vec rhs);

/// Solve J y = rhs. Exact zero pivots are nudged by 2^-52 * ||J||; a
/// non-finite solution past that guard reports the matrix as singular.
Vec ldl_solve(const SymTridiagonal& j, std::span<const double> rhs);

/// First-column entries of J^-1 and J^-2 from a single factorization:
/// t1 = (J^-1)_11, u = (J^-1)_k1, t2 = (J^-2)_11, s = (J^-2)_k1.
struct InverseEntries {
    double t1 = 0.0;
    double s = 0.0;
    double u = 0.0;
    double t2 = 0.0;
};

InverseEntries inverse_entries(const SymTridiagonal& j);

/// Last LDL' pivot of J - z*I, retried with z nudged by +-2^-52 * ||J|| when
/// the sweep runs over a zero pivot; the building block of the Radau/Lobatto
/// node prescriptions.
double guarded_last_pivot(const SymTridiagonal& j, double z);

/// Grow J by one row/column so the result has z as an exact eigenvalue
/// (Gauss-Radau prescription): new diagonal entry z + delta_k where
/// (J - z I) delta = gamma_k^2 e_k, new off-diagonal gamma_k.
/// If the shifted sweep hits a zero pivot, z is nudged by +-2^-52 * ||J||.
SymTridiagonal radau_extend(const SymTridiagonal& j, double gamma_k, double z);

/// Grow J by one row/column so the result has both a and b as exact
/// eigenvalues (Gauss-Lobatto prescription). Solves
///   [1 -delta_k; 1 -mu_k] [omega; gamma^2] = [a; b]
/// with (J - a I) delta = e_k and (J - b I) mu = e_k. Throws
/// Error(InvalidArgument) when the implied gamma^2 is not positive, which is
/// how a bracket violation (a or b inside the spectrum) surfaces.
SymTridiagonal lobatto_extend(const SymTridiagonal& j, double a, double b);

} // namespace kcert

#endif // KCERT_TRIDIAGONAL_HPP

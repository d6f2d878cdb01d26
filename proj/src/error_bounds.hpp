// SPDX-License-Identifier: Apache-2.0
/// @file error_bounds.hpp
/// @brief Quadrature-based bounds and estimates for the CG error.
///
/// With J_k the CG Jacobi matrix, the squared A-norm error of iterate j
/// equals ||r_0||^2 [(J_N^-1)_11 - (J_j^-1)_11]. Replacing the unknown
/// J_N term by the Gauss rule (J_k itself), a Gauss-Radau extension with a
/// prescribed node below/above the spectrum, or a Gauss-Lobatto extension
/// with both, yields a lower bound, upper/lower bounds, and another upper
/// bound respectively, all computable at iteration k = j + delay.
///
/// Everything is evaluated as sums of per-index LDL increments
/// tau_i = c_i^2 / pivot_i, never as a difference of two inverse entries:
/// the increments of the extension rules share the pivots of J_k, so each
/// bound is the Gauss tail plus a single extra term, and no cancellation
/// occurs even when the error has dropped sixteen orders of magnitude.
/// A rule whose extension produces a non-positive pivot (the prescribed node
/// landed inside the spectrum, the "complex norm" failure) or a negative
/// squared norm is flagged, never silently returned.

#ifndef KCERT_ERROR_BOUNDS_HPP
#define KCERT_ERROR_BOUNDS_HPP

#include <span>

#include "tridiagonal.hpp"

namespace kcert {

enum EstimateFlags : unsigned {
    kFlagGauss = 1u << 0,
    kFlagRadauUpper = 1u << 1,
    kFlagRadauLower = 1u << 2,
    kFlagLobatto = 1u << 3,
    kFlagL2 = 1u << 4,
    kFlagRelUndefined = 1u << 5,
};

struct AnormBounds {
    double gauss_lower_sq = 0.0;
    double radau_upper_sq = 0.0;
    double radau_lower_sq = 0.0;
    double lobatto_upper_sq = 0.0;
    unsigned flags = 0;
};

/// All four A-norm bounds for iterate j evaluated on J_k (0 <= j <= k; at
/// j = k the Gauss tail is empty and the extension terms alone bound the
/// current error). gamma_k is the off-diagonal coupling J_k to the next CG
/// step; a_est/b_est are the prescribed Radau/Lobatto nodes (valid bounds
/// require a_est below and b_est above the spectrum of A; violations surface
/// as flags, never as silently absolute-valued bounds).
AnormBounds anorm_bounds(const SymTridiagonal& jk, double gamma_k, double r0_sq,
                         int j, double a_est, double b_est);

/// Independent route to the Gauss lower bound straight from the CG
/// coefficients: sum_{i=j}^{k-1} alpha_i ||r_i||^2.
double hs_lower_bound(std::span<const double> alpha,
                      std::span<const double> rsq_hist, int j, int k);

/// sqrt(bound_sq / (bound_sq + x_anorm_sq)): turns a bound on
/// ||x - x_j||_A^2 into one on ||x - x_j||_A / ||x||_A (x_0 = 0 splits
/// ||x||_A^2 orthogonally into error plus iterate energy).
double relative_anorm(double bound_sq, double x_anorm_sq);

/// l2 (Euclidean) squared error estimate for iterate j:
///   r0^2 [(Jtilde^-2)_11 - (J_j^-2)_11] - 2 (s_j / u_j) * radau_lower_sq
/// with Jtilde the Radau extension of J_k at a_est standing in for J_N and
/// s_j, u_j the corner first-column entries of J_j^-2 and J_j^-1. This is an
/// estimate, not a bound. Failure (non-finite terms, vanishing u_j, negative
/// result, or a failed radau_lower input) sets kFlagL2 in flags.
double l2_estimate_sq(const SymTridiagonal& jk, double gamma_k, double r0_sq,
                      int j, double a_est, double radau_lower_sq,
                      unsigned& flags);

/// sqrt(l2_sq) / x_norm; NaN with kFlagRelUndefined when x_norm is zero or
/// the estimate failed.
double relative_l2(double l2_sq, double x_norm, unsigned& flags);

enum class Criterion {
    RelAnorm,
    RelL2,
    RelResidue,
};

struct ErrorEstimate {
    int k_estimated = 0;            ///< j, the iterate the numbers describe
    int k_current = 0;              ///< k = j + delay, when they were computed
    double gauss_lower_sq = 0.0;
    double radau_upper_sq = 0.0;
    double radau_lower_sq = 0.0;
    double lobatto_upper_sq = 0.0;
    double rel_anorm_upper = 0.0;   ///< from Lobatto, Radau fallback
    double l2_estimate_sq = 0.0;
    double rel_l2_estimate = 0.0;
    double a_used = 0.0;
    double b_used = 0.0;
    unsigned flags = 0;

    bool failed(unsigned mask) const { return (flags & mask) != 0; }
};

/// Assemble the full per-iteration estimate record for iterate j from J_k.
ErrorEstimate estimate_errors(const SymTridiagonal& jk, double gamma_k,
                              double r0_sq, int j, int k, double a_est,
                              double b_est, double x_anorm_sq_j,
                              double x_norm_j);

/// Whether the selected criterion is met. Quantities carrying a failure flag
/// never trigger a stop.
bool stopping_check(const ErrorEstimate& est, Criterion criterion, double tol,
                    double rel_residue);

} // namespace kcert

#endif // KCERT_ERROR_BOUNDS_HPP

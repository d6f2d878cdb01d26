// SPDX-License-Identifier: Apache-2.0
/// @file eig_estimate.hpp
/// @brief Look-ahead extrapolation of the extremal Ritz values.
///
/// The smallest Ritz value f_k of the CG Jacobi matrix approaches the
/// smallest eigenvalue of A from above, so feeding f_k itself into the
/// Gauss-Radau rules places the prescribed node inside the spectrum and
/// ruins the bound direction. The fix regresses the recent decay of f_k in
/// log space and extrapolates it across the remaining iterations, which in
/// practice lands below the target eigenvalue. The largest Ritz value
/// converges fast from below, so a fixed relative safety factor suffices
/// on that side.

#ifndef KCERT_EIG_ESTIMATE_HPP
#define KCERT_EIG_ESTIMATE_HPP

#include <span>
#include <vector>

namespace kcert {

enum class LookAheadVariant {
    OverN,   ///< extrapolation exponent scaled by (N - k) / N
    OverK,   ///< extrapolation exponent scaled by (N - k) / k
};

/// Weighted log-space regression of the decay of f over the last m steps:
///   slope = sum_i w_i ln(f_i / f_k) / sum_i w_i^2,  w_i = (k - i) / k,
/// over i = max(1, k - m) .. k - 1 (all 1-based; f_seq[0] is f_1).
/// Zero when fewer than two values exist. Non-negative whenever f_seq is
/// non-increasing.
double regress_decay(std::span<const double> f_seq, int k, int m);

/// a_tilde_k = f_k * exp(-slope * (N - k)/N) (or /k for OverK). Before k = 3
/// no slope is regressible and a crude one-e-fold guard f_k / e is used.
/// Once k >= N the exponent clamps to zero and the estimate is f_k itself.
double look_ahead_underestimate(double f_k, double slope, int k, int dimension,
                                LookAheadVariant variant);

/// b_est = g_k * (1 + 1e-8); g_k approaches the largest eigenvalue from
/// below, so a hair above it is already outside the spectrum.
double largest_estimate(double g_k);

/// Mean of successive finite-difference ratios
/// (f_{k+1} - f_{k+2}) / (f_k - f_{k+1}), skipping zero denominators.
/// Exactly the ratio for geometric sequences, 1 for arithmetic ones.
/// NaN when no ratio is defined.
double beta_metric(std::span<const double> f_seq);

/// sum_k (a - a_tilde_k)^2 / sum_k (f_k - a)^2 against a reference smallest
/// eigenvalue a; small values mean the extrapolation tracked the target
/// about as well as f_k itself approached it.
double delta_metric(std::span<const double> f_seq,
                    std::span<const double> underestimates, double a);

/// Ritz-value history plus the per-iteration extrapolation.
struct EigenTrace {
    int dimension = 0;                     ///< N of the hosting system
    int window = 10;                       ///< regression window m
    LookAheadVariant variant = LookAheadVariant::OverN;

    std::vector<double> ritz_min;          ///< f_1 .. f_k (clamped monotone)
    std::vector<double> ritz_max;          ///< g_1 .. g_k
    std::vector<double> underestimate;     ///< a_tilde_1 .. a_tilde_k

    /// Record the extremal Ritz values of J_k and extrapolate. Bisection
    /// noise against the interlacing monotonicity is clamped away before the
    /// regression ever sees it.
    void append(double f, double g);
};

} // namespace kcert

#endif // KCERT_EIG_ESTIMATE_HPP

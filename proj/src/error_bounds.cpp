// SPDX-License-Identifier: Apache-2.0
/// @file error_bounds.cpp
/// @brief Gauss / Gauss-Radau / Gauss-Lobatto error bounds from the CG
///        Jacobi matrix, evaluated as cancellation-free increment sums.

#include "error_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"
#include "vec.hpp"

namespace kcert {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

/// Increment contributed by appending one row [coupling, omega_hat] to a
/// factored J_k whose last pivot and last squared first-column entry are
/// given: tau = c_ext^2 / pivot_ext. A non-positive extension pivot means
/// the prescribed node landed inside the spectrum of the extended matrix
/// and the rule is invalid; the raw value is still returned so callers can
/// report it alongside the flag.
double extension_increment(double omega_hat, double coupling_sq,
                           double last_pivot, double c_last_sq,
                           unsigned& flags, unsigned flag) {
    const double pivot_ext = omega_hat - coupling_sq / last_pivot;
    const double c_ext_sq =
        c_last_sq * coupling_sq / (last_pivot * last_pivot);
    const double tau = c_ext_sq / pivot_ext;
    if (!(pivot_ext > 0.0) || !std::isfinite(tau)) flags |= flag;
    return tau;
}

} // namespace

AnormBounds anorm_bounds(const SymTridiagonal& jk, double gamma_k,
                         double r0_sq, int j, double a_est, double b_est) {
    const int k = jk.dim();
    if (k < 1) {
        throw Error(ErrorCode::InvalidArgument,
                    "anorm_bounds: empty Jacobi matrix");
    }
    if (j < 0 || j > k) {
        throw Error(ErrorCode::InvalidArgument,
                    "anorm_bounds: estimate index j must satisfy 0 <= j <= k");
    }
    if (!(r0_sq > 0.0) || !std::isfinite(r0_sq)) {
        throw Error(ErrorCode::InvalidArgument,
                    "anorm_bounds: initial residual norm must be positive");
    }

    AnormBounds out;

    // Shared unshifted LDL sweep. With c = L^-1 e_1 (c_1 = 1,
    // c_{i+1} = -(off_i / delta_i) c_i) every leading inverse entry is a
    // prefix sum of tau_i = c_i^2 / delta_i, so the Gauss bound
    // r0^2 [(J_k^-1)_11 - (J_j^-1)_11] is the tail sum over i = j+1..k of
    // strictly positive terms.
    double delta = 0.0;
    double c_sq = 1.0;
    double tail = 0.0;
    bool positive = true;
    for (int i = 0; i < k; ++i) {
        if (i == 0) {
            delta = jk.diag[0];
        } else {
            const double t = jk.off[i - 1];
            c_sq *= (t * t) / (delta * delta);
            delta = jk.diag[i] - (t * t) / delta;
        }
        if (!(delta > 0.0) || !std::isfinite(delta)) {
            positive = false;
            break;
        }
        if (i >= j) tail += c_sq / delta;
    }
    if (!positive) {
        // J_k not positive definite: no rule is trustworthy.
        out.flags = kFlagGauss | kFlagRadauUpper | kFlagRadauLower |
                    kFlagLobatto;
        out.gauss_lower_sq = out.radau_upper_sq = out.radau_lower_sq =
            out.lobatto_upper_sq = kNan;
        return out;
    }

    out.gauss_lower_sq = r0_sq * tail;
    if (!std::isfinite(out.gauss_lower_sq)) out.flags |= kFlagGauss;

    // Node-location audit. A prescribed node inside the Ritz interval keeps
    // every extended pivot positive, so the extension itself cannot notice a
    // bad prescription; the Sturm count can. A Ritz value below a_est proves
    // a_est > lambda_min (the Ritz values sit above it), so the rules that
    // need a below-spectrum node are invalid; a Ritz value above b_est
    // proves b_est < lambda_max symmetrically. The margin keeps the audit
    // silent when a node sits exactly on a converged Ritz value (a valid
    // prescription, reached at exact termination): pivot rounding scales
    // with the Gershgorin radius, so certify only beyond that fuzz.
    {
        double glo = 0.0, ghi = 0.0;
        jk.gershgorin(glo, ghi);
        const double fuzz =
            1e-12 * std::max({std::abs(glo), std::abs(ghi),
                              std::abs(a_est), std::abs(b_est)});
        if (sturm_count(jk, a_est - fuzz) > 0) {
            out.flags |= kFlagRadauUpper | kFlagLobatto;
        }
        if (sturm_count(jk, b_est + fuzz) < k) {
            out.flags |= kFlagRadauLower | kFlagLobatto;
        }
    }

    const double coupling_sq = gamma_k * gamma_k;

    // Gauss-Radau with prescribed node a_est (below the spectrum -> upper
    // bound). The modified corner omega_hat keeps the last pivot of the
    // shifted extension equal to zero, pinning one node at a_est.
    {
        const double dk = guarded_last_pivot(jk, a_est);
        const double omega_hat = a_est + coupling_sq / dk;
        out.radau_upper_sq =
            out.gauss_lower_sq +
            r0_sq * extension_increment(omega_hat, coupling_sq, delta, c_sq,
                                        out.flags, kFlagRadauUpper);
    }

    // Gauss-Radau with prescribed node b_est (above the spectrum -> lower
    // bound).
    {
        const double dk = guarded_last_pivot(jk, b_est);
        const double omega_hat = b_est + coupling_sq / dk;
        out.radau_lower_sq =
            out.gauss_lower_sq +
            r0_sq * extension_increment(omega_hat, coupling_sq, delta, c_sq,
                                        out.flags, kFlagRadauLower);
    }

    // Gauss-Lobatto with nodes pinned at both a_est and b_est: solve the
    // 2x2 system for the modified corner and coupling.
    {
        const double inv_a = 1.0 / guarded_last_pivot(jk, a_est);
        const double inv_b = 1.0 / guarded_last_pivot(jk, b_est);
        const double ghat_sq = (b_est - a_est) / (inv_a - inv_b);
        if (!(b_est > a_est) || !(ghat_sq > 0.0) || !std::isfinite(ghat_sq)) {
            out.flags |= kFlagLobatto;
            out.lobatto_upper_sq = kNan;
        } else {
            const double omega_hat = a_est + inv_a * ghat_sq;
            out.lobatto_upper_sq =
                out.gauss_lower_sq +
                r0_sq * extension_increment(omega_hat, ghat_sq, delta, c_sq,
                                            out.flags, kFlagLobatto);
        }
    }

    if (out.radau_upper_sq < 0.0) out.flags |= kFlagRadauUpper;
    if (out.radau_lower_sq < 0.0) out.flags |= kFlagRadauLower;
    if (out.lobatto_upper_sq < 0.0) out.flags |= kFlagLobatto;
    return out;
}

double hs_lower_bound(std::span<const double> alpha,
                      std::span<const double> rsq_hist, int j, int k) {
    if (j < 0 || j > k || k > static_cast<int>(alpha.size()) ||
        k > static_cast<int>(rsq_hist.size())) {
        throw Error(ErrorCode::InvalidArgument,
                    "hs_lower_bound: need 0 <= j <= k within history");
    }
    double sum = 0.0;
    for (int i = j; i < k; ++i) sum += alpha[i] * rsq_hist[i];
    return sum;
}

double relative_anorm(double bound_sq, double x_anorm_sq) {
    const double denom = bound_sq + x_anorm_sq;
    if (!(denom > 0.0)) return 0.0;
    return std::sqrt(bound_sq / denom);
}

double l2_estimate_sq(const SymTridiagonal& jk, double gamma_k, double r0_sq,
                      int j, double a_est, double radau_lower_sq,
                      unsigned& flags) {
    const int k = jk.dim();
    if (j < 1 || j > k) {
        throw Error(ErrorCode::InvalidArgument,
                    "l2_estimate_sq: estimate index j must satisfy "
                    "1 <= j <= k");
    }

    double value = kNan;
    try {
        // Radau extension at a_est stands in for the unknown final Jacobi
        // matrix in the (J^-2)_11 difference.
        const SymTridiagonal jt = radau_extend(jk, gamma_k, a_est);
        Vec e1(static_cast<std::size_t>(jt.dim()), 0.0);
        e1[0] = 1.0;
        const Vec y = ldl_solve(jt, e1);
        const double t2_hat = norm_sq(y);

        const InverseEntries lead = inverse_entries(jk.leading(j));
        value = r0_sq * (t2_hat - lead.t2) -
                2.0 * (lead.s / lead.u) * radau_lower_sq;
    } catch (const Error&) {
        flags |= kFlagL2;
        return kNan;
    }

    if (!std::isfinite(value) || value < 0.0) flags |= kFlagL2;
    return value;
}

double relative_l2(double l2_sq, double x_norm, unsigned& flags) {
    if (!(x_norm > 0.0) || !std::isfinite(x_norm) || !(l2_sq >= 0.0) ||
        !std::isfinite(l2_sq)) {
        flags |= kFlagRelUndefined;
        return kNan;
    }
    return std::sqrt(l2_sq) / x_norm;
}

ErrorEstimate estimate_errors(const SymTridiagonal& jk, double gamma_k,
                              double r0_sq, int j, int k, double a_est,
                              double b_est, double x_anorm_sq_j,
                              double x_norm_j) {
    if (jk.dim() != k) {
        throw Error(ErrorCode::InvalidArgument,
                    "estimate_errors: Jacobi matrix dimension must equal k");
    }
    ErrorEstimate est;
    est.k_estimated = j;
    est.k_current = k;
    est.a_used = a_est;
    est.b_used = b_est;

    const AnormBounds ab = anorm_bounds(jk, gamma_k, r0_sq, j, a_est, b_est);
    est.gauss_lower_sq = ab.gauss_lower_sq;
    est.radau_upper_sq = ab.radau_upper_sq;
    est.radau_lower_sq = ab.radau_lower_sq;
    est.lobatto_upper_sq = ab.lobatto_upper_sq;
    est.flags = ab.flags;

    // Certified relative A-norm bound: take the larger of the Gauss-Radau
    // and Gauss-Lobatto upper rules. Until the largest Ritz value has
    // converged, the Lobatto top node sits below the true spectral radius
    // and deflates that rule; the Radau rule prescribes no top node, so the
    // max remains a genuine upper bound whenever either prescription holds.
    double upper_sq = kNan;
    if (!est.failed(kFlagRadauUpper) && std::isfinite(ab.radau_upper_sq) &&
        ab.radau_upper_sq >= 0.0) {
        upper_sq = ab.radau_upper_sq;
    }
    if (!est.failed(kFlagLobatto) && std::isfinite(ab.lobatto_upper_sq) &&
        ab.lobatto_upper_sq >= 0.0 &&
        (!std::isfinite(upper_sq) || ab.lobatto_upper_sq > upper_sq)) {
        upper_sq = ab.lobatto_upper_sq;
    }
    if (std::isfinite(upper_sq)) {
        est.rel_anorm_upper = relative_anorm(upper_sq, x_anorm_sq_j);
    } else {
        est.flags |= kFlagRelUndefined;
        est.rel_anorm_upper = kNan;
    }

    if (j >= 1) {
        est.l2_estimate_sq = l2_estimate_sq(jk, gamma_k, r0_sq, j, a_est,
                                            ab.radau_lower_sq, est.flags);
        if (est.failed(kFlagRadauLower)) est.flags |= kFlagL2;
        est.rel_l2_estimate = est.failed(kFlagL2)
                                  ? kNan
                                  : relative_l2(est.l2_estimate_sq, x_norm_j,
                                                est.flags);
    } else {
        est.flags |= kFlagL2;
        est.l2_estimate_sq = kNan;
        est.rel_l2_estimate = kNan;
    }
    return est;
}

bool stopping_check(const ErrorEstimate& est, Criterion criterion, double tol,
                    double rel_residue) {
    switch (criterion) {
        case Criterion::RelResidue:
            return rel_residue < tol;
        case Criterion::RelAnorm:
            return !est.failed(kFlagRelUndefined) &&
                   std::isfinite(est.rel_anorm_upper) &&
                   est.rel_anorm_upper < tol;
        case Criterion::RelL2:
            return !est.failed(kFlagL2 | kFlagRelUndefined) &&
                   std::isfinite(est.rel_l2_estimate) &&
                   est.rel_l2_estimate < tol;
    }
    return false;
}

} // namespace kcert

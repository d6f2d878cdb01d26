// SPDX-License-Identifier: Apache-2.0
/// @file solver.cpp

#include "solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

#include "cg.hpp"
#include "dense_oracle.hpp"
#include "error.hpp"
#include "tridiagonal.hpp"

namespace kcert {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

/// Below this relative residual the iteration has hit the floating-point
/// floor: CG cannot make progress and another step risks a zero direction.
constexpr double kResidueFloor = 1e-15;

void validate(const SolveConfig& cfg) {
    if (!(cfg.tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "solve: tol must be positive");
    }
    if (cfg.delay < 1) {
        throw Error(ErrorCode::InvalidArgument, "solve: delay must be >= 1");
    }
    if (cfg.max_iter < 0) {
        throw Error(ErrorCode::InvalidArgument,
                    "solve: max_iter must be >= 0 (0 selects the default)");
    }
    if (cfg.window < 2) {
        throw Error(ErrorCode::InvalidArgument, "solve: window must be >= 2");
    }
    if (cfg.eig_source == EigSource::Fixed &&
        (!(cfg.fixed_a > 0.0) || !(cfg.fixed_b > cfg.fixed_a))) {
        throw Error(ErrorCode::InvalidArgument,
                    "solve: fixed eigenvalue nodes need 0 < a < b");
    }
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

SolveReport run_solve(const CsrMatrix& a, std::span<const double> b,
                      const SolveConfig& cfg) {
    validate(cfg);
    const int n = a.n;
    const int max_iter = cfg.max_iter > 0 ? cfg.max_iter : 4 * n;

    SolveReport rep;
    rep.beta_metric = kNan;
    rep.delta_metric = kNan;
    rep.lambda_min = rep.lambda_max = rep.kappa = kNan;

    // Dense ground truth: needed for truth columns and for the Oracle
    // eigenvalue source. Never touched otherwise.
    std::optional<DenseSym> dense;
    Vec x_true;
    if (cfg.with_truth || cfg.eig_source == EigSource::Oracle) {
        dense = DenseSym::from_csr(a);
        const std::vector<double> eigs = dense_eigenvalues(*dense);
        rep.lambda_min = eigs.front();
        rep.lambda_max = eigs.back();
        rep.kappa = rep.lambda_max / rep.lambda_min;
    }
    double b_anorm = 0.0;
    if (cfg.with_truth) {
        x_true = exact_solve(*dense, b);
        b_anorm = std::sqrt(std::max(quadratic_form(a, b), 0.0));
    }

    CgState s = cg_init(a, b);
    SymTridiagonal jac;
    EigenTrace eig;
    eig.dimension = n;
    eig.window = cfg.window;
    eig.variant = cfg.variant;

    const double eps = std::numeric_limits<double>::epsilon();
    StopReason reason = StopReason::MaxIterations;
    double prev_f = 0.0;
    double prev_g = 0.0;
    double a_est = 0.0;
    double b_est = 0.0;
    ErrorEstimate last_est;
    bool have_est = false;

    while (s.k < max_iter) {
        cg_step(s, a, &rep.matvec_seconds);
        const int k = s.k;

        TraceRow row;
        row.k = k;
        row.rel_residue = s.rel_residue();

        const auto t0 = std::chrono::steady_clock::now();
        recurrence_append(jac, s.alpha, s.beta);

        // Extremal Ritz values, warm-started: interlacing puts the new
        // smallest at or below the old one and the new largest at or above,
        // and the certified bracket ends keep the clamp cases safe.
        double f = 0.0;
        double g = 0.0;
        if (k == 1) {
            f = g = jac.diag[0];
        } else {
            double glo = 0.0;
            double ghi = 0.0;
            jac.gershgorin(glo, ghi);
            const double tol_abs =
                std::max(1e-10 * (ghi - glo),
                         4.0 * eps * std::max(std::abs(glo), std::abs(ghi)));
            f = smallest_eigenvalue(jac, glo, std::min(prev_f, ghi), tol_abs);
            g = largest_eigenvalue(jac, std::max(prev_g, glo), ghi, tol_abs);
        }
        prev_f = f;
        prev_g = g;
        eig.append(f, g);
        row.f_k = eig.ritz_min.back();
        row.g_k = eig.ritz_max.back();
        row.a_tilde = eig.underestimate.back();

        switch (cfg.eig_source) {
            case EigSource::Estimated:
                a_est = row.a_tilde;
                b_est = largest_estimate(row.g_k);
                break;
            case EigSource::Oracle:
                // Shaved one-sidedly so the node keeps a safe distance from
                // a converged Ritz value: the extension pivot divides by the
                // node-to-Ritz gap, and a gap near rounding scale turns the
                // bound into noise. 1e-6 relative costs a negligible amount
                // of tightness and keeps the gap orders above that scale.
                a_est = rep.lambda_min * (1.0 - 1e-6);
                b_est = rep.lambda_max * (1.0 + 1e-6);
                break;
            case EigSource::Fixed:
                a_est = cfg.fixed_a;
                b_est = cfg.fixed_b;
                break;
        }

        if (k > cfg.delay) {
            const int j = k - cfg.delay;
            last_est = estimate_errors(
                jac, next_offdiagonal(s.alpha, s.beta), s.r0_sq, j, k, a_est,
                b_est, s.x_anorm_sq[static_cast<std::size_t>(j)],
                s.x_norm[static_cast<std::size_t>(j)]);
            have_est = true;
            rep.rows[static_cast<std::size_t>(j) - 1].estimate = last_est;
            rep.rows[static_cast<std::size_t>(j) - 1].has_estimate = true;
        }
        const double dt = elapsed(t0);
        rep.estimator_seconds += dt;
        rep.estimator_seconds_per_iter.push_back(dt);

        if (cfg.with_truth) {
            row.has_truth = true;
            const TrueErrors te = true_errors(*dense, x_true, s.x);
            row.true_anorm = te.anorm;
            row.true_rel_anorm = te.rel_anorm;
            row.true_l2 = te.l2;
            row.true_rel_l2 = te.rel_l2;
            row.rel_residue_anorm =
                std::sqrt(std::max(quadratic_form(a, s.r), 0.0)) / b_anorm;
        }

        rep.rows.push_back(row);

        bool stop = false;
        if (cfg.criterion == Criterion::RelResidue) {
            stop = stopping_check(last_est, cfg.criterion, cfg.tol,
                                  row.rel_residue);
        } else if (have_est) {
            stop = stopping_check(last_est, cfg.criterion, cfg.tol,
                                  row.rel_residue);
        }
        if (stop) {
            reason = StopReason::CriterionMet;
            break;
        }
        if (s.converged || row.rel_residue < kResidueFloor) {
            reason = StopReason::ExactTermination;
            break;
        }
    }

    rep.x = s.x;
    rep.iterations = s.k;
    rep.final_rel_residue = s.rel_residue();
    rep.stop_reason = reason;

    // Flush: iterates within the delay window of the stopping point get
    // their bounds from the final Jacobi matrix (effective delay < d; at
    // exact termination the coupling is zero and the numbers are exact).
    {
        const auto t0 = std::chrono::steady_clock::now();
        const double gamma_fin = next_offdiagonal(s.alpha, s.beta);
        for (int j = std::max(1, s.k - cfg.delay + 1); j <= s.k; ++j) {
            TraceRow& row = rep.rows[static_cast<std::size_t>(j) - 1];
            if (row.has_estimate) continue;
            if (j == s.k && s.converged) {
                // The final iterate is the exact solution; every error
                // measure is identically zero, no quadrature needed.
                ErrorEstimate zero;
                zero.k_estimated = j;
                zero.k_current = s.k;
                zero.gauss_lower_sq = zero.radau_upper_sq = 0.0;
                zero.radau_lower_sq = zero.lobatto_upper_sq = 0.0;
                zero.rel_anorm_upper = zero.l2_estimate_sq = 0.0;
                zero.rel_l2_estimate = 0.0;
                zero.a_used = a_est;
                zero.b_used = b_est;
                zero.flags = 0;
                row.estimate = zero;
            } else {
                row.estimate = estimate_errors(
                    jac, gamma_fin, s.r0_sq, j, s.k, a_est, b_est,
                    s.x_anorm_sq[static_cast<std::size_t>(j)],
                    s.x_norm[static_cast<std::size_t>(j)]);
            }
            row.has_estimate = true;
        }
        rep.estimator_seconds += elapsed(t0);
    }

    rep.beta_metric = beta_metric(eig.ritz_min);
    if (cfg.with_truth) {
        rep.delta_metric =
            delta_metric(eig.ritz_min, eig.underestimate, rep.lambda_min);
    }
    return rep;
}

const char* criterion_name(Criterion c) {
    switch (c) {
        case Criterion::RelAnorm: return "rel_anorm";
        case Criterion::RelL2: return "rel_l2";
        case Criterion::RelResidue: return "rel_residue";
    }
    return "unknown";
}

const char* stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::CriterionMet: return "criterion_met";
        case StopReason::ExactTermination: return "exact_termination";
        case StopReason::MaxIterations: return "max_iterations";
    }
    return "unknown";
}

const char* eig_source_name(EigSource s) {
    switch (s) {
        case EigSource::Estimated: return "estimated";
        case EigSource::Oracle: return "oracle";
        case EigSource::Fixed: return "fixed";
    }
    return "unknown";
}

const char* variant_name(LookAheadVariant v) {
    switch (v) {
        case LookAheadVariant::OverN: return "over-n";
        case LookAheadVariant::OverK: return "over-k";
    }
    return "unknown";
}

} // namespace kcert

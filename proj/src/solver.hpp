// SPDX-License-Identifier: Apache-2.0
/// @file solver.hpp
/// @brief Instrumented solve driver: CG plus the eigenvalue tracker and the
///        quadrature error estimators, producing a per-iteration trace.
///
/// The driver owns the strict sequential pipeline: after CG completes
/// iteration k it appends row k to the Jacobi matrix, updates the extremal
/// Ritz values (warm-started from iteration k-1; interlacing makes the old
/// values valid bracket ends), extrapolates the look-ahead underestimate,
/// and evaluates the error bounds for the delayed iterate j = k - d. The
/// selected stopping criterion consumes those numbers, never raw history.

#ifndef KCERT_SOLVER_HPP
#define KCERT_SOLVER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "csr_matrix.hpp"
#include "eig_estimate.hpp"
#include "error_bounds.hpp"
#include "vec.hpp"

namespace kcert {

enum class EigSource {
    Estimated,  ///< non-stationary look-ahead underestimate (the default)
    Oracle,     ///< dense-spectrum extremes (validation only; densifies A)
    Fixed,      ///< user-supplied nodes, passed through unaltered
};

enum class StopReason {
    CriterionMet,
    ExactTermination,  ///< residual reached exact zero (or its fp floor)
    MaxIterations,
};

struct SolveConfig {
    double tol = 1e-8;
    int max_iter = 0;  ///< <= 0 selects the default 4n
    Criterion criterion = Criterion::RelAnorm;
    int delay = 4;     ///< d: estimates describe iterate j = k - d
    int window = 10;   ///< m: look-ahead regression window
    LookAheadVariant variant = LookAheadVariant::OverN;
    EigSource eig_source = EigSource::Estimated;
    double fixed_a = 0.0;  ///< EigSource::Fixed only
    double fixed_b = 0.0;
    bool with_truth = false;  ///< dense-oracle instrumentation (capped n)
    std::uint64_t seed = 0;   ///< echoed into the trace summary
};

/// One line of the per-iteration trace; row k describes iterate x_k.
struct TraceRow {
    int k = 0;
    double rel_residue = 0.0;  ///< ||r_k|| / ||b||
    double f_k = 0.0;          ///< smallest Ritz value of J_k
    double g_k = 0.0;          ///< largest Ritz value of J_k
    double a_tilde = 0.0;      ///< look-ahead underestimate of lambda_min

    bool has_estimate = false;
    ErrorEstimate estimate;    ///< error numbers for iterate k

    bool has_truth = false;
    double rel_residue_anorm = 0.0;  ///< ||r_k||_A / ||b||_A
    double true_anorm = 0.0;
    double true_rel_anorm = 0.0;
    double true_l2 = 0.0;
    double true_rel_l2 = 0.0;
};

struct SolveReport {
    Vec x;
    int iterations = 0;
    StopReason stop_reason = StopReason::MaxIterations;
    double final_rel_residue = 0.0;
    std::vector<TraceRow> rows;  ///< rows[i] describes iteration i + 1

    /// Mean consecutive-gap ratio of the smallest Ritz values (decay
    /// regularity indicator); NaN when fewer than three iterations ran.
    double beta_metric = 0.0;
    /// Underestimate quality sum((a - a_tilde)^2) / sum((f_k - a)^2) against
    /// the dense-oracle lambda_min; NaN without truth instrumentation.
    double delta_metric = 0.0;

    /// Dense-oracle spectrum data (NaN unless computed for this run).
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double kappa = 0.0;

    double matvec_seconds = 0.0;
    double estimator_seconds = 0.0;
    /// Estimator wall time per iteration (Ritz tracking + bounds); feeds the
    /// linear-growth overhead check and stays out of the CSV.
    std::vector<double> estimator_seconds_per_iter;
};

/// Run the full instrumented solve. Throws Error for invalid configuration,
/// non-SPD behavior inside CG, and oracle-capacity violations.
SolveReport run_solve(const CsrMatrix& a, std::span<const double> b,
                      const SolveConfig& config);

const char* criterion_name(Criterion c);
const char* stop_reason_name(StopReason r);
const char* eig_source_name(EigSource s);
const char* variant_name(LookAheadVariant v);

} // namespace kcert

#endif // KCERT_SOLVER_HPP

// SPDX-License-Identifier: Apache-2.0
/// @file cg.hpp
/// @brief Conjugate gradient iteration instrumented for quadrature bounds.
///
/// Besides the usual iterate/residual/direction triple, the state keeps the
/// full alpha/beta coefficient history (they define the Jacobi matrix of the
/// underlying Lanczos process), the residual norm history, and running
/// iterate norms, all of which the error estimators consume.

#ifndef KCERT_CG_HPP
#define KCERT_CG_HPP

#include <span>

#include "csr_matrix.hpp"
#include "tridiagonal.hpp"
#include "vec.hpp"

namespace kcert {

struct CgState {
    int k = 0;                       ///< completed iterations
    Vec x;
    Vec r;
    Vec d;
    std::vector<double> alpha;       ///< alpha_0 .. alpha_{k-1}
    std::vector<double> beta;        ///< beta_1 .. beta_k
    std::vector<double> rsq_hist;    ///< ||r_0||^2 .. ||r_k||^2
    std::vector<double> x_anorm_sq;  ///< ||x_i||_A^2, incremental (x0 = 0 only)
    std::vector<double> x_norm;      ///< ||x_i||
    double b_norm = 0.0;
    double r0_sq = 0.0;
    bool x0_zero = true;
    bool converged = false;          ///< residual hit exact zero

    double rel_residue() const;      ///< ||r_k|| / ||b||
};

/// Start from x0 (pass an empty span for x0 = 0). Rejects dimension
/// mismatches and b = 0 (for which x = 0 already solves the system).
CgState cg_init(const CsrMatrix& a, std::span<const double> b,
                std::span<const double> x0 = {});

/// One CG step. Throws Error(NotPositiveDefinite) when d'Ad <= 0, quoting
/// the offending iteration. When matvec_seconds is given, the time spent in
/// the A*d product is added to it.
void cg_step(CgState& s, const CsrMatrix& a, double* matvec_seconds = nullptr);

/// Append rows to the CG Jacobi matrix until it covers every completed
/// iteration: omega_k = 1/alpha_{k-1} + beta_{k-1}/alpha_{k-2} (with
/// beta_0 = 0, alpha_{-1} = 1) and gamma_k = sqrt(beta_k)/alpha_{k-1}.
/// The off-diagonal trails the diagonal by one step, so J gains gamma_{k-1}
/// and omega_k together.
void recurrence_append(SymTridiagonal& j, std::span<const double> alpha,
                       std::span<const double> beta);

/// Off-diagonal gamma_k coupling J_k to the not-yet-appended row k+1; the
/// Radau/Lobatto extensions need it one step before recurrence_append would
/// emit it. Zero at exact termination (beta_k = 0).
double next_offdiagonal(std::span<const double> alpha,
                        std::span<const double> beta);

} // namespace kcert

#endif // KCERT_CG_HPP

// SPDX-License-Identifier: Apache-2.0

#include "cg.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "error.hpp"

namespace kcert {

double CgState::rel_residue() const {
    return std::sqrt(rsq_hist[k]) / b_norm;
}

CgState cg_init(const CsrMatrix& a, std::span<const double> b,
                std::span<const double> x0) {
    if (a.n < 1) throw Error(ErrorCode::InvalidArgument, "cg_init: empty matrix");
    if (static_cast<int>(b.size()) != a.n) {
        throw Error(ErrorCode::Dimension,
                    "cg_init: right-hand side length " + std::to_string(b.size()) +
                        " does not match matrix dimension " + std::to_string(a.n));
    }
    if (!x0.empty() && static_cast<int>(x0.size()) != a.n) {
        throw Error(ErrorCode::Dimension,
                    "cg_init: initial guess length does not match matrix dimension");
    }

    CgState s;
    s.b_norm = norm(b);
    if (s.b_norm == 0.0) {
        throw Error(ErrorCode::InvalidArgument,
                    "cg_init: b is zero; x = 0 already solves the system");
    }

    s.x0_zero = true;
    for (double v : x0) {
        if (v != 0.0) {
            s.x0_zero = false;
            break;
        }
    }
    if (s.x0_zero) {
        s.x.assign(a.n, 0.0);
        s.r.assign(b.begin(), b.end());
    } else {
        s.x.assign(x0.begin(), x0.end());
        s.r = matvec(a, s.x);
        for (int i = 0; i < a.n; ++i) s.r[i] = b[i] - s.r[i];
    }
    s.d = s.r;
    s.r0_sq = norm_sq(s.r);
    s.rsq_hist.push_back(s.r0_sq);
    s.x_anorm_sq.push_back(s.x0_zero ? 0.0 : quadratic_form(a, s.x));
    s.x_norm.push_back(norm(s.x));
    s.converged = (s.r0_sq == 0.0);
    return s;
}

void cg_step(CgState& s, const CsrMatrix& a, double* matvec_seconds) {
    if (s.converged) {
        throw Error(ErrorCode::InvalidArgument,
                    "cg_step: iteration already converged");
    }
    Vec ad(s.d.size());
    if (matvec_seconds) {
        const auto t0 = std::chrono::steady_clock::now();
        a.multiply(s.d, ad);
        const auto t1 = std::chrono::steady_clock::now();
        *matvec_seconds += std::chrono::duration<double>(t1 - t0).count();
    } else {
        a.multiply(s.d, ad);
    }

    const double dad = dot(s.d, ad);
    if (!(dad > 0.0)) {
        throw Error(ErrorCode::NotPositiveDefinite,
                    "cg_step: d'Ad = " + std::to_string(dad) + " at iteration " +
                        std::to_string(s.k + 1) +
                        "; matrix is not positive definite");
    }

    const double rsq_old = s.rsq_hist.back();
    const double alpha = rsq_old / dad;
    axpy(alpha, s.d, s.x);
    axpy(-alpha, ad, s.r);
    const double rsq_new = norm_sq(s.r);
    const double beta = rsq_new / rsq_old;

    s.alpha.push_back(alpha);
    s.beta.push_back(beta);
    s.rsq_hist.push_back(rsq_new);
    // The running-sum identity for the A-norm of the iterate requires a zero
    // initial guess; otherwise the cross terms do not cancel and the value is
    // recomputed directly.
    s.x_anorm_sq.push_back(s.x0_zero ? s.x_anorm_sq.back() + alpha * rsq_old
                                     : quadratic_form(a, s.x));
    s.x_norm.push_back(norm(s.x));
    update_direction(s.r, beta, s.d);
    ++s.k;
    s.converged = (rsq_new == 0.0);
}

void recurrence_append(SymTridiagonal& j, std::span<const double> alpha,
                       std::span<const double> beta) {
    while (j.dim() < static_cast<int>(alpha.size())) {
        const int k = j.dim() + 1;   // 1-based index of the row being added
        double omega;
        if (k == 1) {
            omega = 1.0 / alpha[0];
        } else {
            omega = 1.0 / alpha[k - 1] + beta[k - 2] / alpha[k - 2];
            j.off.push_back(std::sqrt(beta[k - 2]) / alpha[k - 2]);
        }
        j.diag.push_back(omega);
    }
}

double next_offdiagonal(std::span<const double> alpha,
                        std::span<const double> beta) {
    const std::size_t k = alpha.size();
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "no completed iteration");
    if (beta[k - 1] < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "negative beta: CG breakdown");
    }
    return std::sqrt(beta[k - 1]) / alpha[k - 1];
}

} // namespace kcert

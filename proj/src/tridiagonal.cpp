// SPDX-License-Identifier: Apache-2.0

#include "tridiagonal.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

#include "error.hpp"

namespace kcert {

namespace {

constexpr double kEps = 2.220446049250313e-16;   // 2^-52

double pivot_floor(const SymTridiagonal& j) {
    double p = kEps * j.inf_norm();
    return p > 0.0 ? p : DBL_MIN;
}

/// One LDL' pivot recurrence over J - sigma*I. Tracks the eigenvalue count
/// (negative pivots), the last pivot, and its derivative in sigma; the
/// derivative drives the Newton acceleration in the extremal searches.
struct Sweep {
    int count = 0;
    double last_pivot = 0.0;
    double last_deriv = 0.0;
    bool clamped = false;
};

Sweep pivot_sweep(const SymTridiagonal& j, double sigma, double pivmin) {
    Sweep s;
    const int k = j.dim();
    double d = j.diag[0] - sigma;
    double dp = -1.0;
    if (std::abs(d) <= pivmin) {
        d = -pivmin;
        s.clamped = true;
    }
    if (d < 0.0) ++s.count;
    for (int i = 1; i < k; ++i) {
        const double t = j.off[i - 1] * j.off[i - 1];
        dp = -1.0 + (t / (d * d)) * dp;
        d = j.diag[i] - sigma - t / d;
        if (std::abs(d) <= pivmin) {
            d = -pivmin;
            s.clamped = true;
        }
        if (d < 0.0) ++s.count;
    }
    s.last_pivot = d;
    s.last_deriv = dp;
    return s;
}

} // namespace

double SymTridiagonal::inf_norm() const {
    const int k = dim();
    double m = 0.0;
    for (int i = 0; i < k; ++i) {
        double row = std::abs(diag[i]);
        if (i > 0) row += std::abs(off[i - 1]);
        if (i + 1 < k) row += std::abs(off[i]);
        m = std::max(m, row);
    }
    return m;
}

void SymTridiagonal::gershgorin(double& lo, double& hi) const {
    const int k = dim();
    lo = HUGE_VAL;
    hi = -HUGE_VAL;
    for (int i = 0; i < k; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(off[i - 1]);
        if (i + 1 < k) r += std::abs(off[i]);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
}

SymTridiagonal SymTridiagonal::leading(int m) const {
    SymTridiagonal out;
    out.diag.assign(diag.begin(), diag.begin() + m);
    if (m > 1) out.off.assign(off.begin(), off.begin() + (m - 1));
    return out;
}

int sturm_count(const SymTridiagonal& j, double sigma) {
    if (j.dim() == 0) return 0;
    return pivot_sweep(j, sigma, pivot_floor(j)).count;
}

double smallest_eigenvalue(const SymTridiagonal& j, double lo, double hi,
                           double tol_abs) {
    const double pivmin = pivot_floor(j);
    double glo, ghi;
    j.gershgorin(glo, ghi);

    if (pivot_sweep(j, hi, pivmin).count == 0) return hi;

    Sweep at_lo = pivot_sweep(j, lo, pivmin);
    double step = std::max(hi - lo, 16.0 * tol_abs);
    while (at_lo.count > 0 && lo > glo) {
        lo = std::max(glo, lo - step);
        step *= 4.0;
        at_lo = pivot_sweep(j, lo, pivmin);
    }
    // Gershgorin guarantees no eigenvalue below glo; a nonzero count there is
    // rounding fuzz at the interval edge and the bracket is taken as valid.
    bool have_newton = at_lo.count == 0 && !at_lo.clamped &&
                       at_lo.last_pivot > 0.0 && at_lo.last_deriv < 0.0;

    for (int sweeps = 0; sweeps < 200 && hi - lo > tol_abs; ++sweeps) {
        double sigma;
        if (have_newton) {
            const double nstep = -at_lo.last_pivot / at_lo.last_deriv;
            sigma = nstep <= 0.5 * tol_abs ? lo + tol_abs : lo + nstep;
            if (!(sigma > lo && sigma < hi)) sigma = 0.5 * (lo + hi);
        } else {
            sigma = 0.5 * (lo + hi);
        }
        if (!(sigma > lo && sigma < hi)) break;   // interval at fp resolution
        const Sweep s = pivot_sweep(j, sigma, pivmin);
        if (s.count >= 1) {
            hi = sigma;
        } else {
            lo = sigma;
            at_lo = s;
            have_newton = !s.clamped && s.last_pivot > 0.0 && s.last_deriv < 0.0;
        }
    }
    return lo;
}

double largest_eigenvalue(const SymTridiagonal& j, double lo, double hi,
                          double tol_abs) {
    const int k = j.dim();
    const double pivmin = pivot_floor(j);
    double glo, ghi;
    j.gershgorin(glo, ghi);

    if (pivot_sweep(j, lo, pivmin).count >= k) return lo;

    Sweep at_hi = pivot_sweep(j, hi, pivmin);
    double step = std::max(hi - lo, 16.0 * tol_abs);
    while (at_hi.count < k && hi < ghi) {
        hi = std::min(ghi, hi + step);
        step *= 4.0;
        at_hi = pivot_sweep(j, hi, pivmin);
    }
    bool have_newton = at_hi.count == k && !at_hi.clamped &&
                       at_hi.last_pivot < 0.0 && at_hi.last_deriv < 0.0;

    for (int sweeps = 0; sweeps < 200 && hi - lo > tol_abs; ++sweeps) {
        double sigma;
        if (have_newton) {
            const double nstep = -at_hi.last_pivot / at_hi.last_deriv;   // < 0
            sigma = -nstep <= 0.5 * tol_abs ? hi - tol_abs : hi + nstep;
            if (!(sigma > lo && sigma < hi)) sigma = 0.5 * (lo + hi);
        } else {
            sigma = 0.5 * (lo + hi);
        }
        if (!(sigma > lo && sigma < hi)) break;
        const Sweep s = pivot_sweep(j, sigma, pivmin);
        if (s.count >= k) {
            hi = sigma;
            at_hi = s;
            have_newton = !s.clamped && s.last_pivot < 0.0 && s.last_deriv < 0.0;
        } else {
            lo = sigma;
        }
    }
    return hi;
}

ExtremalPair extremal_eigenvalues(const SymTridiagonal& j, double rel_tol) {
    if (j.dim() == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
    if (j.dim() == 1) return {j.diag[0], j.diag[0]};
    double glo, ghi;
    j.gershgorin(glo, ghi);
    const double width = ghi - glo;
    if (width == 0.0) return {glo, ghi};
    const double tol_abs =
        std::max(rel_tol * width,
                 4.0 * kEps * std::max(std::abs(glo), std::abs(ghi)));
    return {smallest_eigenvalue(j, glo, ghi, tol_abs),
            largest_eigenvalue(j, glo, ghi, tol_abs)};
}

std::vector<double> tridiagonal_eigenvalues(const SymTridiagonal& j,
                                            double rel_tol) {
    const int k = j.dim();
    if (k == 0) return {};
    if (k == 1) return {j.diag[0]};
    double glo, ghi;
    j.gershgorin(glo, ghi);
    const double width = ghi - glo;
    std::vector<double> eig(k);
    if (width == 0.0) {
        std::fill(eig.begin(), eig.end(), glo);
        return eig;
    }
    const double tol_abs =
        std::max(rel_tol * width,
                 4.0 * kEps * std::max(std::abs(glo), std::abs(ghi)));
    const double pivmin = pivot_floor(j);
    double prev = glo;
    for (int idx = 1; idx <= k; ++idx) {
        double lo = prev;
        double hi = ghi;
        while (hi - lo > tol_abs) {
            const double mid = 0.5 * (lo + hi);
            if (!(mid > lo && mid < hi)) break;
            if (pivot_sweep(j, mid, pivmin).count >= idx) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        eig[idx - 1] = 0.5 * (lo + hi);
        prev = lo;
    }
    return eig;
}

LdlFactor ldl_factor(const SymTridiagonal& j, double shift) {
    const int k = j.dim();
    LdlFactor f;
    f.pivots.resize(k);
    f.multipliers.resize(k > 0 ? k - 1 : 0);
    const double pivmin = pivot_floor(j);
    double d = j.diag[0] - shift;
    if (d == 0.0) d = pivmin;
    f.pivots[0] = d;
    for (int i = 1; i < k; ++i) {
        const double l = j.off[i - 1] / f.pivots[i - 1];
        f.multipliers[i - 1] = l;
        d = j.diag[i] - shift - j.off[i - 1] * l;
        if (d == 0.0) d = pivmin;
        f.pivots[i] = d;
    }
    return f;
}

Vec ldl_solve_factored(const LdlFactor& f, Vec rhs) {
    const int k = static_cast<int>(f.pivots.size());
    for (int i = 1; i < k; ++i) rhs[i] -= f.multipliers[i - 1] * rhs[i - 1];
    for (int i = 0; i < k; ++i) rhs[i] /= f.pivots[i];
    for (int i = k - 2; i >= 0; --i) rhs[i] -= f.multipliers[i] * rhs[i + 1];
    return rhs;
}

Vec ldl_solve(const SymTridiagonal& j, std::span<const double> rhs) {
    if (static_cast<int>(rhs.size()) != j.dim()) {
        throw Error(ErrorCode::Dimension,
                    "ldl_solve: right-hand side length does not match matrix");
    }
    Vec y = ldl_solve_factored(ldl_factor(j), Vec(rhs.begin(), rhs.end()));
    for (double v : y) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::Singular, "ldl_solve: matrix is singular");
        }
    }
    return y;
}

InverseEntries inverse_entries(const SymTridiagonal& j) {
    const int k = j.dim();
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
    const LdlFactor f = ldl_factor(j);
    Vec e1(k, 0.0);
    e1[0] = 1.0;
    const Vec y = ldl_solve_factored(f, std::move(e1));
    const Vec w = ldl_solve_factored(f, y);
    InverseEntries r;
    r.t1 = y[0];
    r.u = y[k - 1];
    r.t2 = norm_sq(y);
    r.s = w[k - 1];
    if (!std::isfinite(r.t1) || !std::isfinite(r.u) || !std::isfinite(r.t2) ||
        !std::isfinite(r.s)) {
        throw Error(ErrorCode::Singular, "inverse_entries: matrix is singular");
    }
    return r;
}

double guarded_last_pivot(const SymTridiagonal& j, double z) {
    const double pivmin = pivot_floor(j);
    const double nudge = kEps * std::max(j.inf_norm(), 1.0);
    Sweep s = pivot_sweep(j, z, pivmin);
    for (int attempt = 1; attempt <= 2 && s.clamped; ++attempt) {
        const double zn = attempt == 1 ? z - nudge : z + nudge;
        s = pivot_sweep(j, zn, pivmin);
    }
    return s.last_pivot;
}

SymTridiagonal radau_extend(const SymTridiagonal& j, double gamma_k, double z) {
    if (j.dim() == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
    const double dk = guarded_last_pivot(j, z);
    const double delta_k = gamma_k * gamma_k / dk;
    SymTridiagonal out = j;
    out.off.push_back(gamma_k);
    out.diag.push_back(z + delta_k);
    return out;
}

SymTridiagonal lobatto_extend(const SymTridiagonal& j, double a, double b) {
    if (j.dim() == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
    if (!(b > a)) {
        throw Error(ErrorCode::InvalidArgument,
                    "lobatto_extend: nodes must satisfy a < b");
    }
    const double delta_k = 1.0 / guarded_last_pivot(j, a);
    const double mu_k = 1.0 / guarded_last_pivot(j, b);
    const double gamma_sq = (b - a) / (delta_k - mu_k);
    if (!(gamma_sq > 0.0) || !std::isfinite(gamma_sq)) {
        throw Error(ErrorCode::InvalidArgument,
                    "lobatto_extend: nodes do not bracket the spectrum "
                    "(implied gamma^2 = " + std::to_string(gamma_sq) + ")");
    }
    SymTridiagonal out = j;
    out.off.push_back(std::sqrt(gamma_sq));
    out.diag.push_back(a + delta_k * gamma_sq);
    return out;
}

} // namespace kcert

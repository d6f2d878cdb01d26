// SPDX-License-Identifier: Apache-2.0
/// @file test_error_bounds.cpp
/// @brief Quadrature error bounds: hand values, algebraic identities,
///        sandwich ordering, and failure flagging.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cg.hpp"
#include "dense_oracle.hpp"
#include "error_bounds.hpp"
#include "matrix_market.hpp"
#include "test_util.hpp"

using namespace kcert;
using namespace kcert::testutil;

namespace {

/// The diag(1,2), b = (1,1) chain: J_2 = [[3/2,1/2],[1/2,3/2]], r0^2 = 2.
SymTridiagonal chain_j2() {
    SymTridiagonal j;
    j.diag = {1.5, 1.5};
    j.off = {0.5};
    return j;
}

SymTridiagonal chain_j1() {
    SymTridiagonal j;
    j.diag = {1.5};
    return j;
}

} // namespace

TEST_CASE("hand-chain Gauss value at j=1, k=2 is exactly 1/6") {
    const AnormBounds b = anorm_bounds(chain_j2(), 0.0, 2.0, 1, 1.0, 2.0);
    CHECK(rel_diff(b.gauss_lower_sq, 1.0 / 6.0) <= 1e-14);
    // At exact termination (zero coupling) the Radau terms add nothing.
    CHECK(rel_diff(b.radau_upper_sq, 1.0 / 6.0) <= 1e-14);
    CHECK(rel_diff(b.radau_lower_sq, 1.0 / 6.0) <= 1e-14);
    // Here the prescribed nodes coincide with the Ritz values of the final
    // matrix, so the two-point Lobatto system is singular and the value is
    // flagged; the solve driver reports exact termination separately.
    CHECK(b.flags == kFlagLobatto);
    CHECK(std::isnan(b.lobatto_upper_sq));
}

TEST_CASE("hand-chain bounds at j=0, k=1 with exact nodes are all 3/2") {
    // One CG step on diag(1,2): J_1 = [3/2], coupling gamma_1 = 1/2. With
    // both nodes on the true eigenvalues the two-atom measure is integrated
    // exactly by every rule: the full initial error 3/2.
    const AnormBounds b = anorm_bounds(chain_j1(), 0.5, 2.0, 0, 1.0, 2.0);
    CHECK(b.flags == 0);
    CHECK(rel_diff(b.gauss_lower_sq, 4.0 / 3.0) <= 1e-14);
    CHECK(rel_diff(b.radau_upper_sq, 1.5) <= 1e-14);
    CHECK(rel_diff(b.radau_lower_sq, 1.5) <= 1e-14);
    CHECK(rel_diff(b.lobatto_upper_sq, 1.5) <= 1e-14);
}

TEST_CASE("hs_lower_bound matches the hand chain and the Gauss value") {
    const std::vector<double> alpha = {2.0 / 3.0, 3.0 / 4.0};
    const std::vector<double> rsq = {2.0, 2.0 / 9.0, 0.0};
    CHECK(rel_diff(hs_lower_bound(alpha, rsq, 1, 2), 1.0 / 6.0) <= 1e-15);
    CHECK(rel_diff(hs_lower_bound(alpha, rsq, 0, 2), 1.5) <= 1e-15);
    CHECK(hs_lower_bound(alpha, rsq, 1, 1) == 0.0);
}

TEST_CASE("relative_anorm forms") {
    CHECK(relative_anorm(0.0, 5.0) == 0.0);
    CHECK(relative_anorm(0.0, 0.0) == 0.0);
    CHECK(relative_anorm(0.25, 0.0) == 1.0);
    CHECK(rel_diff(relative_anorm(1.0 / 6.0, 4.0 / 3.0), 1.0 / 3.0) <= 1e-14);
}

TEST_CASE("l2 estimate reproduces the hand value 5/36 exactly") {
    unsigned flags = 0;
    const double l2 =
        l2_estimate_sq(chain_j2(), 0.0, 2.0, 1, 1.0, 1.0 / 6.0, flags);
    CHECK(flags == 0);
    CHECK(rel_diff(l2, 5.0 / 36.0) <= 1e-13);

    unsigned rflags = 0;
    const double rel = relative_l2(l2, 2.0 * std::sqrt(2.0) / 3.0, rflags);
    CHECK(rflags == 0);
    CHECK(rel_diff(rel, std::sqrt(10.0) / 8.0) <= 1e-13);
}

TEST_CASE("relative_l2 degenerate inputs flag instead of inventing numbers") {
    unsigned flags = 0;
    CHECK(relative_l2(0.0, 2.0, flags) == 0.0);
    CHECK(flags == 0);
    unsigned f2 = 0;
    const double r = relative_l2(0.25, 0.0, f2);
    CHECK((f2 & kFlagRelUndefined) != 0);
    CHECK(std::isnan(r));
}

TEST_CASE("fused evaluation equals the explicit extension difference") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        const SymTridiagonal j = random_spd_tridiag(7, rng);
        const ExtremalPair p = extremal_eigenvalues(j, 1e-13);
        const double gamma = 0.35;
        const double r0sq = 3.0;
        const double a = 0.8 * p.smallest;
        const double b = 1.2 * p.largest;
        for (int jj : {1, 3, 6, 7}) {
            const AnormBounds fused = anorm_bounds(j, gamma, r0sq, jj, a, b);
            REQUIRE(fused.flags == 0);

            const double tj =
                jj == 0 ? 0.0 : inverse_entries(j.leading(jj)).t1;
            const double g_exp =
                r0sq * (inverse_entries(j).t1 - tj);
            const double ru_exp =
                r0sq * (inverse_entries(radau_extend(j, gamma, a)).t1 - tj);
            const double rl_exp =
                r0sq * (inverse_entries(radau_extend(j, gamma, b)).t1 - tj);
            const double lo_exp =
                r0sq * (inverse_entries(lobatto_extend(j, a, b)).t1 - tj);

            // The explicit path subtracts two nearly equal moments, so its
            // own rounding error scales with the minuend, not the result;
            // compare absolutely at that scale.
            const double scale = r0sq * inverse_entries(j).t1;
            if (jj < 7) {
                CHECK(std::abs(fused.gauss_lower_sq - g_exp) <=
                      1e-10 * scale);
            } else {
                CHECK(fused.gauss_lower_sq == 0.0);
            }
            CHECK(std::abs(fused.radau_upper_sq - ru_exp) <= 1e-10 * scale);
            CHECK(std::abs(fused.radau_lower_sq - rl_exp) <= 1e-10 * scale);
            CHECK(std::abs(fused.lobatto_upper_sq - lo_exp) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("sandwich ordering against true errors on a controlled spectrum") {
    std::mt19937_64 rng(2024);
    const int n = 30;
    const std::vector<double> eigs = geometric_spectrum(n, 0.5, 200.0);
    const DenseSym dense = random_spd_with_spectrum(eigs, rng);
    const CsrMatrix a = csr_from_dense(n, dense.a);
    std::uniform_real_distribution<double> ud(0.5, 1.5);
    Vec b(static_cast<std::size_t>(n));
    for (double& v : b) v = ud(rng);
    const Vec x_true = exact_solve(dense, b);

    CgState s = cg_init(a, b);
    const int delay = 4;
    SymTridiagonal jac;
    const double a_node = eigs.front() * (1.0 - 1e-10);
    const double b_node = eigs.back() * (1.0 + 1e-10);
    const double eps0_sq = quadratic_form(a, x_true);

    for (int k = 1; k <= 25; ++k) {
        cg_step(s, a);
        recurrence_append(jac, s.alpha, s.beta);
        if (k <= delay) continue;
        const int j = k - delay;
        const AnormBounds bd =
            anorm_bounds(jac, next_offdiagonal(s.alpha, s.beta), s.r0_sq, j,
                         a_node, b_node);
        REQUIRE(bd.flags == 0);

        // true squared A-norm error of iterate j comes from the identity
        // sum_{i>=j} alpha_i ||r_i||^2 run to (near) machine convergence; at
        // k = 25 the run below has fully converged.
        CgState deep = cg_init(a, b);
        for (int i = 0; i < n && !deep.converged; ++i) cg_step(deep, a);
        const double true_sq =
            hs_lower_bound(deep.alpha, deep.rsq_hist, j, deep.k);
        if (true_sq <= 1e-24 * eps0_sq) continue;

        CHECK(bd.gauss_lower_sq <= true_sq * (1.0 + 1e-10));
        CHECK(bd.radau_upper_sq * (1.0 + 1e-10) >= true_sq);
        CHECK(bd.lobatto_upper_sq * (1.0 + 1e-10) >= true_sq);
        CHECK(bd.radau_lower_sq <= true_sq * (1.0 + 1e-10));
    }
}

TEST_CASE("longer delay tightens the Gauss lower bound") {
    std::mt19937_64 rng(7);
    const int n = 24;
    const DenseSym dense =
        random_spd_with_spectrum(geometric_spectrum(n, 1.0, 50.0), rng);
    const CsrMatrix a = csr_from_dense(n, dense.a);
    const Vec b(static_cast<std::size_t>(n), 1.0);
    CgState s = cg_init(a, b);
    SymTridiagonal jac;
    const int j = 3;
    double prev = -1.0;
    for (int k = 1; k <= 12; ++k) {
        cg_step(s, a);
        recurrence_append(jac, s.alpha, s.beta);
        if (k <= j) continue;
        const AnormBounds bd = anorm_bounds(
            jac, next_offdiagonal(s.alpha, s.beta), s.r0_sq, j, 0.5, 60.0);
        CHECK(bd.gauss_lower_sq >= prev * (1.0 - 1e-12));
        prev = bd.gauss_lower_sq;
    }
}

TEST_CASE("gauss equals the coefficient identity along a fixture run") {
    const CsrMatrix a = read_matrix_market_file(fixture_path("bcsstk05.mtx"));
    const Vec b(static_cast<std::size_t>(a.n), 1.0);
    CgState s = cg_init(a, b);
    SymTridiagonal jac;
    const int delay = 4;
    for (int k = 1; k <= 40; ++k) {
        cg_step(s, a);
        recurrence_append(jac, s.alpha, s.beta);
        if (k <= delay) continue;
        const int j = k - delay;
        const AnormBounds bd = anorm_bounds(
            jac, next_offdiagonal(s.alpha, s.beta), s.r0_sq, j, 1e-3, 1e5);
        const double hs = hs_lower_bound(s.alpha, s.rsq_hist, j, k);
        CHECK(rel_diff(bd.gauss_lower_sq, hs) <= 1e-10);
    }
}

TEST_CASE("a node inside the spectrum fires the failure flags") {
    // A node above the smallest Ritz value pushes the extension pivot
    // negative: the rule flags itself but still reports the raw value, so
    // a trace can show the bound dipping below the truth.
    const SymTridiagonal j2 = chain_j2();  // eigenvalues {1, 2}
    const AnormBounds bd = anorm_bounds(j2, 0.5, 2.0, 1, 1.05, 2.2);
    CHECK((bd.flags & kFlagRadauUpper) != 0);
    CHECK(std::isfinite(bd.radau_upper_sq));
    CHECK(bd.radau_upper_sq < bd.gauss_lower_sq);
    // The untouched rules stay clean.
    CHECK(rel_diff(bd.gauss_lower_sq, 1.0 / 6.0) <= 1e-14);
    CHECK((bd.flags & kFlagGauss) == 0);
}

TEST_CASE("non-SPD tridiagonal input flags every rule") {
    SymTridiagonal bad;
    bad.diag = {1.0, -2.0};
    bad.off = {0.1};
    const AnormBounds bd = anorm_bounds(bad, 0.1, 1.0, 1, 0.5, 3.0);
    CHECK((bd.flags & kFlagGauss) != 0);
    CHECK((bd.flags & kFlagRadauUpper) != 0);
    CHECK((bd.flags & kFlagRadauLower) != 0);
    CHECK((bd.flags & kFlagLobatto) != 0);
}

TEST_CASE("swapped Lobatto nodes flag the rule") {
    const AnormBounds bd = anorm_bounds(chain_j2(), 0.5, 2.0, 1, 2.2, 0.9);
    CHECK((bd.flags & kFlagLobatto) != 0);
}

TEST_CASE("estimate_errors assembles the record and relative forms") {
    // Nodes are shaved off the exact eigenvalues the way every caller
    // prescribes them; exactly-hit Ritz values would make the Lobatto
    // system singular.
    const double a = 1.0 - 1e-9;
    const double b = 2.0 + 1e-9;
    const ErrorEstimate e = estimate_errors(chain_j2(), 0.0, 2.0, 1, 2, a, b,
                                            4.0 / 3.0,
                                            2.0 * std::sqrt(2.0) / 3.0);
    CHECK(e.k_estimated == 1);
    CHECK(e.k_current == 2);
    CHECK(e.flags == 0);
    CHECK(rel_diff(e.gauss_lower_sq, 1.0 / 6.0) <= 1e-13);
    CHECK(rel_diff(e.rel_anorm_upper, 1.0 / 3.0) <= 1e-7);
    CHECK(rel_diff(e.rel_l2_estimate, std::sqrt(10.0) / 8.0) <= 1e-7);
    CHECK(e.a_used == a);
    CHECK(e.b_used == b);
}

TEST_CASE("stopping_check honors validity flags") {
    ErrorEstimate e;
    e.rel_anorm_upper = 1e-9;
    e.rel_l2_estimate = 1e-9;
    e.flags = 0;
    CHECK(stopping_check(e, Criterion::RelAnorm, 1e-8, 1.0));
    CHECK(stopping_check(e, Criterion::RelL2, 1e-8, 1.0));
    CHECK_FALSE(stopping_check(e, Criterion::RelAnorm, 1e-10, 1.0));

    e.flags = kFlagRelUndefined;
    CHECK_FALSE(stopping_check(e, Criterion::RelAnorm, 1e-8, 1.0));
    e.flags = kFlagL2;
    CHECK_FALSE(stopping_check(e, Criterion::RelL2, 1e-8, 1.0));

    // The residue criterion ignores the estimate record entirely.
    e.flags = 0xffffffffu;
    CHECK(stopping_check(e, Criterion::RelResidue, 1e-8, 1e-9));
    CHECK_FALSE(stopping_check(e, Criterion::RelResidue, 1e-8, 1e-7));
}

TEST_CASE("relative form applied to true quantities reproduces the oracle") {
    std::mt19937_64 rng(404);
    const int n = 20;
    const DenseSym dense =
        random_spd_with_spectrum(geometric_spectrum(n, 1.0, 30.0), rng);
    const CsrMatrix a = csr_from_dense(n, dense.a);
    const Vec b(static_cast<std::size_t>(n), 1.0);
    const Vec x_true = exact_solve(dense, b);

    CgState s = cg_init(a, b);
    for (int k = 0; k < 8; ++k) cg_step(s, a);
    const TrueErrors te = true_errors(dense, x_true, s.x);
    const double rel = relative_anorm(te.anorm * te.anorm,
                                      quadratic_form(a, s.x));
    CHECK(rel_diff(rel, te.rel_anorm) <= 1e-12);
}

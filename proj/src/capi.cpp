// SPDX-License-Identifier: Apache-2.0
/// @file capi.cpp
/// @brief extern-C boundary: opaque handles over the C++ core, exceptions
///        mapped to status codes, thread-local error text.

#include "krylov_certify.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <span>
#include <string>
#include <utility>

#include "csr_matrix.hpp"
#include "dense_oracle.hpp"
#include "error.hpp"
#include "matrix_market.hpp"
#include "rhs.hpp"
#include "solver.hpp"
#include "trace_csv.hpp"

struct kc_matrix {
    kcert::CsrMatrix m;
    std::string label;
};

struct kc_report {
    kcert::SolveReport rep;
    kcert::SolveConfig cfg;
    kcert::TraceMeta meta;
};

namespace {

thread_local std::string g_last_error;

kc_status map_code(kcert::ErrorCode code) {
    switch (code) {
        case kcert::ErrorCode::InvalidArgument: return KC_ERR_INVALID_ARGUMENT;
        case kcert::ErrorCode::Io: return KC_ERR_IO;
        case kcert::ErrorCode::Parse: return KC_ERR_PARSE;
        case kcert::ErrorCode::Dimension: return KC_ERR_DIMENSION;
        case kcert::ErrorCode::NotPositiveDefinite:
            return KC_ERR_NOT_POSITIVE_DEFINITE;
        case kcert::ErrorCode::Singular: return KC_ERR_SINGULAR;
        case kcert::ErrorCode::MaxIterations: return KC_ERR_MAX_ITERATIONS;
        case kcert::ErrorCode::TooLarge: return KC_ERR_TOO_LARGE;
    }
    return KC_ERR_INTERNAL;
}

kc_status fail(kc_status status, const char* message) {
    g_last_error = message;
    return status;
}

template <typename Fn>
kc_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const kcert::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return KC_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return KC_ERR_INTERNAL;
    }
}

kcert::SolveConfig to_config(const kc_solve_options& o) {
    kcert::SolveConfig cfg;
    cfg.tol = o.tol;
    cfg.max_iter = o.max_iter;
    switch (o.criterion) {
        case KC_CRITERION_REL_ANORM: cfg.criterion = kcert::Criterion::RelAnorm; break;
        case KC_CRITERION_REL_L2: cfg.criterion = kcert::Criterion::RelL2; break;
        case KC_CRITERION_REL_RESIDUE:
            cfg.criterion = kcert::Criterion::RelResidue;
            break;
        default:
            throw kcert::Error(kcert::ErrorCode::InvalidArgument,
                               "unknown criterion code");
    }
    cfg.delay = o.delay;
    cfg.window = o.window;
    switch (o.variant) {
        case KC_VARIANT_OVER_N: cfg.variant = kcert::LookAheadVariant::OverN; break;
        case KC_VARIANT_OVER_K: cfg.variant = kcert::LookAheadVariant::OverK; break;
        default:
            throw kcert::Error(kcert::ErrorCode::InvalidArgument,
                               "unknown variant code");
    }
    switch (o.eig_source) {
        case KC_EIG_ESTIMATED: cfg.eig_source = kcert::EigSource::Estimated; break;
        case KC_EIG_ORACLE: cfg.eig_source = kcert::EigSource::Oracle; break;
        case KC_EIG_FIXED: cfg.eig_source = kcert::EigSource::Fixed; break;
        default:
            throw kcert::Error(kcert::ErrorCode::InvalidArgument,
                               "unknown eigenvalue source code");
    }
    cfg.fixed_a = o.fixed_a;
    cfg.fixed_b = o.fixed_b;
    cfg.with_truth = o.with_truth != 0;
    cfg.seed = o.seed;
    return cfg;
}

} // namespace

extern "C" {

const char* kc_version(void) { return "1.0.0"; }

const char* kc_last_error(void) { return g_last_error.c_str(); }

const char* kc_status_name(kc_status status) {
    switch (status) {
        case KC_OK: return "KC_OK";
        case KC_ERR_INVALID_ARGUMENT: return "KC_ERR_INVALID_ARGUMENT";
        case KC_ERR_IO: return "KC_ERR_IO";
        case KC_ERR_PARSE: return "KC_ERR_PARSE";
        case KC_ERR_DIMENSION: return "KC_ERR_DIMENSION";
        case KC_ERR_NOT_POSITIVE_DEFINITE:
            return "KC_ERR_NOT_POSITIVE_DEFINITE";
        case KC_ERR_SINGULAR: return "KC_ERR_SINGULAR";
        case KC_ERR_MAX_ITERATIONS: return "KC_ERR_MAX_ITERATIONS";
        case KC_ERR_TOO_LARGE: return "KC_ERR_TOO_LARGE";
        case KC_ERR_INTERNAL: return "KC_ERR_INTERNAL";
    }
    return "KC_ERR_UNKNOWN";
}

void kc_solve_options_init(kc_solve_options* opts) {
    if (!opts) return;
    opts->tol = 1e-8;
    opts->max_iter = 0;
    opts->criterion = KC_CRITERION_REL_ANORM;
    opts->delay = 4;
    opts->window = 10;
    opts->variant = KC_VARIANT_OVER_N;
    opts->eig_source = KC_EIG_ESTIMATED;
    opts->fixed_a = 0.0;
    opts->fixed_b = 0.0;
    opts->with_truth = 0;
    opts->seed = 0;
}

kc_status kc_matrix_read_file(const char* path, kc_matrix** out) {
    if (!path || !out) return fail(KC_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&]() {
        auto* handle = new kc_matrix{kcert::read_matrix_market_file(path), path};
        *out = handle;
        return KC_OK;
    });
}

kc_status kc_matrix_create_csr(int32_t n, const int32_t* row_offsets,
                               const int32_t* col_indices,
                               const double* values, kc_matrix** out) {
    if (!row_offsets || !col_indices || !values || !out) {
        return fail(KC_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    return guarded([&]() {
        if (n < 1) {
            throw kcert::Error(kcert::ErrorCode::InvalidArgument,
                               "matrix dimension must be positive");
        }
        if (row_offsets[0] != 0) {
            throw kcert::Error(kcert::ErrorCode::InvalidArgument,
                               "row_offsets must start at 0");
        }
        kcert::CsrMatrix m;
        m.n = n;
        m.row_offsets.assign(row_offsets, row_offsets + n + 1);
        const int32_t nnz = row_offsets[n];
        for (int32_t i = 0; i < n; ++i) {
            if (row_offsets[i + 1] < row_offsets[i]) {
                throw kcert::Error(kcert::ErrorCode::InvalidArgument,
                                   "row_offsets must be non-decreasing");
            }
        }
        for (int32_t idx = 0; idx < nnz; ++idx) {
            if (col_indices[idx] < 0 || col_indices[idx] >= n) {
                throw kcert::Error(kcert::ErrorCode::InvalidArgument,
                                   "column index out of range");
            }
        }
        m.col_indices.assign(col_indices, col_indices + nnz);
        m.values.assign(values, values + nnz);
        *out = new kc_matrix{std::move(m), "(memory)"};
        return KC_OK;
    });
}

void kc_matrix_free(kc_matrix* m) { delete m; }

int32_t kc_matrix_dim(const kc_matrix* m) { return m ? m->m.n : 0; }

int64_t kc_matrix_nnz(const kc_matrix* m) {
    return m ? static_cast<int64_t>(m->m.nnz()) : 0;
}

kc_status kc_matrix_spectrum(const kc_matrix* m, double* lambda_min,
                             double* lambda_max) {
    if (!m || !lambda_min || !lambda_max) {
        return fail(KC_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&]() {
        const auto dense = kcert::DenseSym::from_csr(m->m);
        const auto eigs = kcert::dense_eigenvalues(dense);
        *lambda_min = eigs.front();
        *lambda_max = eigs.back();
        return KC_OK;
    });
}

kc_status kc_make_rhs(const kc_matrix* m, const char* spec, uint64_t seed,
                      double* out) {
    if (!m || !spec || !out) {
        return fail(KC_ERR_INVALID_ARGUMENT, "null argument");
    }
    return guarded([&]() {
        const kcert::Vec b =
            kcert::make_rhs(kcert::parse_rhs_spec(spec), m->m, seed);
        std::memcpy(out, b.data(), b.size() * sizeof(double));
        return KC_OK;
    });
}

kc_status kc_solve(const kc_matrix* m, const double* b, const char* rhs_label,
                   const kc_solve_options* opts, kc_report** out) {
    if (!m || !b || !opts || !out) {
        return fail(KC_ERR_INVALID_ARGUMENT, "null argument");
    }
    *out = nullptr;
    return guarded([&]() {
        auto r = new kc_report;
        try {
            r->cfg = to_config(*opts);
            r->meta.matrix_label = m->label;
            r->meta.rhs_label = rhs_label ? rhs_label : "(custom)";
            r->meta.n = m->m.n;
            r->rep = kcert::run_solve(
                m->m, std::span<const double>(b, static_cast<std::size_t>(m->m.n)),
                r->cfg);
        } catch (...) {
            delete r;
            throw;
        }
        *out = r;
        return KC_OK;
    });
}

void kc_report_free(kc_report* r) { delete r; }

int32_t kc_report_iterations(const kc_report* r) {
    return r ? r->rep.iterations : 0;
}

int32_t kc_report_stop_reason(const kc_report* r) {
    if (!r) return KC_STOP_MAX_ITERATIONS;
    switch (r->rep.stop_reason) {
        case kcert::StopReason::CriterionMet: return KC_STOP_CRITERION_MET;
        case kcert::StopReason::ExactTermination:
            return KC_STOP_EXACT_TERMINATION;
        case kcert::StopReason::MaxIterations: return KC_STOP_MAX_ITERATIONS;
    }
    return KC_STOP_MAX_ITERATIONS;
}

double kc_report_final_rel_residue(const kc_report* r) {
    return r ? r->rep.final_rel_residue : 0.0;
}

kc_status kc_report_solution(const kc_report* r, double* out, size_t len) {
    if (!r || !out) return fail(KC_ERR_INVALID_ARGUMENT, "null argument");
    if (len != r->rep.x.size()) {
        return fail(KC_ERR_DIMENSION, "solution buffer length mismatch");
    }
    std::memcpy(out, r->rep.x.data(), len * sizeof(double));
    return KC_OK;
}

double kc_report_beta_metric(const kc_report* r) {
    return r ? r->rep.beta_metric : 0.0;
}

double kc_report_delta_metric(const kc_report* r) {
    return r ? r->rep.delta_metric : 0.0;
}

double kc_report_lambda_min(const kc_report* r) {
    return r ? r->rep.lambda_min : 0.0;
}

double kc_report_lambda_max(const kc_report* r) {
    return r ? r->rep.lambda_max : 0.0;
}

double kc_report_kappa(const kc_report* r) { return r ? r->rep.kappa : 0.0; }

double kc_report_matvec_seconds(const kc_report* r) {
    return r ? r->rep.matvec_seconds : 0.0;
}

double kc_report_estimator_seconds(const kc_report* r) {
    return r ? r->rep.estimator_seconds : 0.0;
}

int32_t kc_report_row_count(const kc_report* r) {
    return r ? static_cast<int32_t>(r->rep.rows.size()) : 0;
}

kc_status kc_report_row(const kc_report* r, int32_t index, kc_trace_row* out) {
    if (!r || !out) return fail(KC_ERR_INVALID_ARGUMENT, "null argument");
    if (index < 0 || index >= static_cast<int32_t>(r->rep.rows.size())) {
        return fail(KC_ERR_INVALID_ARGUMENT, "trace row index out of range");
    }
    const kcert::TraceRow& row = r->rep.rows[static_cast<std::size_t>(index)];
    kc_trace_row o;
    std::memset(&o, 0, sizeof o);
    o.k = row.k;
    o.has_estimate = row.has_estimate ? 1 : 0;
    o.has_truth = row.has_truth ? 1 : 0;
    o.rel_residue = row.rel_residue;
    o.f_k = row.f_k;
    o.g_k = row.g_k;
    o.a_tilde = row.a_tilde;
    if (row.has_estimate) {
        o.failed_flags = row.estimate.flags;
        o.gauss_lower_sq = row.estimate.gauss_lower_sq;
        o.radau_upper_sq = row.estimate.radau_upper_sq;
        o.radau_lower_sq = row.estimate.radau_lower_sq;
        o.lobatto_upper_sq = row.estimate.lobatto_upper_sq;
        o.rel_anorm_upper = row.estimate.rel_anorm_upper;
        o.l2_estimate_sq = row.estimate.l2_estimate_sq;
        o.rel_l2_estimate = row.estimate.rel_l2_estimate;
        o.a_used = row.estimate.a_used;
        o.b_used = row.estimate.b_used;
    }
    if (index < static_cast<int32_t>(r->rep.estimator_seconds_per_iter.size())) {
        o.estimator_seconds =
            r->rep.estimator_seconds_per_iter[static_cast<std::size_t>(index)];
    }
    if (row.has_truth) {
        o.rel_residue_anorm = row.rel_residue_anorm;
        o.true_anorm = row.true_anorm;
        o.true_rel_anorm = row.true_rel_anorm;
        o.true_l2 = row.true_l2;
        o.true_rel_l2 = row.true_rel_l2;
    }
    *out = o;
    return KC_OK;
}

kc_status kc_report_write_csv(const kc_report* r, const char* path) {
    if (!r) return fail(KC_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&]() {
        if (!path || std::strcmp(path, "-") == 0) {
            kcert::write_trace_csv(std::cout, r->meta, r->cfg, r->rep);
            std::cout.flush();
            return KC_OK;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw kcert::Error(kcert::ErrorCode::Io,
                               std::string("cannot open output file: ") + path);
        }
        kcert::write_trace_csv(out, r->meta, r->cfg, r->rep);
        out.flush();
        if (!out) {
            throw kcert::Error(kcert::ErrorCode::Io,
                               std::string("write failed: ") + path);
        }
        return KC_OK;
    });
}

} // extern "C"

// SPDX-License-Identifier: Apache-2.0
/// @file test_capi.cpp
/// @brief Shared-library boundary: status codes, handle lifecycle, trace
///        introspection, and CSV output. Links only against the C API.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <krylov_certify.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string fixture(const std::string& name) {
    return std::string(KCERT_FIXTURE_DIR) + "/" + name;
}

struct MatrixDeleter {
    void operator()(kc_matrix* m) const { kc_matrix_free(m); }
};
struct ReportDeleter {
    void operator()(kc_report* r) const { kc_report_free(r); }
};
using MatrixPtr = std::unique_ptr<kc_matrix, MatrixDeleter>;
using ReportPtr = std::unique_ptr<kc_report, ReportDeleter>;

MatrixPtr load(const std::string& name) {
    kc_matrix* raw = nullptr;
    REQUIRE(kc_matrix_read_file(fixture(name).c_str(), &raw) == KC_OK);
    return MatrixPtr(raw);
}

} // namespace

TEST_CASE("version and status names") {
    const char* v = kc_version();
    REQUIRE(v != nullptr);
    int maj = -1;
    int min = -1;
    int pat = -1;
    CHECK(std::sscanf(v, "%d.%d.%d", &maj, &min, &pat) == 3);

    CHECK(std::strcmp(kc_status_name(KC_OK), "KC_OK") == 0);
    CHECK(kc_status_name(KC_ERR_PARSE) != nullptr);
    CHECK(kc_status_name(static_cast<kc_status>(999)) != nullptr);
}

TEST_CASE("options init fills the documented defaults") {
    kc_solve_options opts;
    std::memset(&opts, 0x5a, sizeof opts);
    kc_solve_options_init(&opts);
    CHECK(opts.tol == 1e-8);
    CHECK(opts.max_iter == 0);
    CHECK(opts.criterion == KC_CRITERION_REL_ANORM);
    CHECK(opts.delay == 4);
    CHECK(opts.window == 10);
    CHECK(opts.variant == KC_VARIANT_OVER_N);
    CHECK(opts.eig_source == KC_EIG_ESTIMATED);
    CHECK(opts.with_truth == 0);
    CHECK(opts.seed == 0);
}

TEST_CASE("matrix io failures come back as status codes with messages") {
    kc_matrix* raw = nullptr;
    CHECK(kc_matrix_read_file("/no/such/file.mtx", &raw) == KC_ERR_IO);
    CHECK(raw == nullptr);
    CHECK(std::strlen(kc_last_error()) > 0);

    CHECK(kc_matrix_read_file(fixture("small/bad_banner.mtx").c_str(), &raw) ==
          KC_ERR_PARSE);
    CHECK(kc_matrix_read_file(fixture("small/bad_index.mtx").c_str(), &raw) ==
          KC_ERR_PARSE);
    CHECK(kc_matrix_read_file(fixture("small/bad_dup.mtx").c_str(), &raw) ==
          KC_ERR_PARSE);

    CHECK(kc_matrix_read_file(nullptr, &raw) == KC_ERR_INVALID_ARGUMENT);
    kc_matrix* ok = nullptr;
    CHECK(kc_matrix_read_file(fixture("small/diag12.mtx").c_str(), nullptr) ==
          KC_ERR_INVALID_ARGUMENT);
    (void)ok;
}

TEST_CASE("csr construction validates the layout") {
    const int32_t offsets[] = {0, 1, 2};
    const int32_t cols[] = {0, 1};
    const double vals[] = {1.0, 2.0};
    kc_matrix* m = nullptr;
    REQUIRE(kc_matrix_create_csr(2, offsets, cols, vals, &m) == KC_OK);
    CHECK(kc_matrix_dim(m) == 2);
    CHECK(kc_matrix_nnz(m) == 2);
    kc_matrix_free(m);

    const int32_t bad_offsets[] = {1, 1, 2};
    CHECK(kc_matrix_create_csr(2, bad_offsets, cols, vals, &m) ==
          KC_ERR_INVALID_ARGUMENT);
    const int32_t bad_cols[] = {0, 7};
    CHECK(kc_matrix_create_csr(2, offsets, bad_cols, vals, &m) ==
          KC_ERR_INVALID_ARGUMENT);
    CHECK(kc_matrix_create_csr(-1, offsets, cols, vals, &m) ==
          KC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("spectrum of the 2x2 diagonal") {
    MatrixPtr m = load("small/diag12.mtx");
    double lo = 0.0;
    double hi = 0.0;
    REQUIRE(kc_matrix_spectrum(m.get(), &lo, &hi) == KC_OK);
    CHECK(std::abs(lo - 1.0) <= 1e-9);
    CHECK(std::abs(hi - 2.0) <= 1e-9);
}

TEST_CASE("rhs generation through the boundary") {
    MatrixPtr m = load("small/diag12.mtx");
    std::vector<double> b(2, 0.0);
    REQUIRE(kc_make_rhs(m.get(), "ones", 0, b.data()) == KC_OK);
    CHECK(b[0] == 1.0);
    CHECK(b[1] == 1.0);

    CHECK(kc_make_rhs(m.get(), "nonsense", 0, b.data()) ==
          KC_ERR_INVALID_ARGUMENT);
    CHECK(kc_make_rhs(m.get(), nullptr, 0, b.data()) ==
          KC_ERR_INVALID_ARGUMENT);

    std::vector<double> e1(2, 0.0);
    std::vector<double> e2(2, 0.0);
    REQUIRE(kc_make_rhs(m.get(), "eigmin:0.01", 9, e1.data()) == KC_OK);
    REQUIRE(kc_make_rhs(m.get(), "eigmin:0.01", 9, e2.data()) == KC_OK);
    CHECK(e1 == e2);
}

TEST_CASE("full solve round trip with trace rows and CSV") {
    MatrixPtr m = load("small/diag12.mtx");
    kc_solve_options opts;
    kc_solve_options_init(&opts);
    opts.delay = 1;
    opts.with_truth = 1;

    const double b[] = {1.0, 1.0};
    kc_report* raw = nullptr;
    REQUIRE(kc_solve(m.get(), b, "ones", &opts, &raw) == KC_OK);
    ReportPtr rep(raw);

    CHECK(kc_report_iterations(rep.get()) == 2);
    CHECK(kc_report_stop_reason(rep.get()) == KC_STOP_EXACT_TERMINATION);
    CHECK(kc_report_final_rel_residue(rep.get()) <= 1e-15);
    CHECK(kc_report_row_count(rep.get()) == 2);
    CHECK(std::abs(kc_report_lambda_min(rep.get()) - 1.0) <= 1e-9);
    CHECK(std::abs(kc_report_kappa(rep.get()) - 2.0) <= 1e-8);

    double x[2] = {0.0, 0.0};
    REQUIRE(kc_report_solution(rep.get(), x, 2) == KC_OK);
    CHECK(std::abs(x[0] - 1.0) <= 1e-14);
    CHECK(std::abs(x[1] - 0.5) <= 1e-14);
    CHECK(kc_report_solution(rep.get(), x, 1) == KC_ERR_DIMENSION);

    kc_trace_row row;
    REQUIRE(kc_report_row(rep.get(), 0, &row) == KC_OK);
    CHECK(row.k == 1);
    CHECK(row.has_estimate == 1);
    CHECK(row.has_truth == 1);
    CHECK(std::abs(row.rel_residue - 1.0 / 3.0) <= 1e-14);
    CHECK(std::abs(row.gauss_lower_sq - 1.0 / 6.0) <= 1e-13);
    CHECK(std::abs(row.true_rel_anorm - 1.0 / 3.0) <= 1e-12);
    CHECK(row.failed_flags == 0);
    CHECK(kc_report_row(rep.get(), 5, &row) == KC_ERR_INVALID_ARGUMENT);

    const char* csv_path = "/tmp/kcert_capi_trace.csv";
    REQUIRE(kc_report_write_csv(rep.get(), csv_path) == KC_OK);
    std::ifstream in(csv_path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    CHECK(text.find("# krylov_certify trace v1") == 0);
    CHECK(text.find("# rhs = ones") != std::string::npos);
    CHECK(text.find("rel_residue_anorm") != std::string::npos);
}

TEST_CASE("solve rejects bad configurations and non-SPD input") {
    MatrixPtr m = load("small/diag12.mtx");
    kc_solve_options opts;
    kc_solve_options_init(&opts);
    const double b[] = {1.0, 1.0};
    kc_report* rep = nullptr;

    opts.tol = -1.0;
    CHECK(kc_solve(m.get(), b, nullptr, &opts, &rep) ==
          KC_ERR_INVALID_ARGUMENT);
    kc_solve_options_init(&opts);
    opts.criterion = 17;
    CHECK(kc_solve(m.get(), b, nullptr, &opts, &rep) ==
          KC_ERR_INVALID_ARGUMENT);
    kc_solve_options_init(&opts);
    CHECK(kc_solve(m.get(), nullptr, nullptr, &opts, &rep) ==
          KC_ERR_INVALID_ARGUMENT);

    // b = e1 leaves the positive eigenspace, so the second CG pivot is
    // negative; an all-ones b is an eigenvector and would terminate cleanly.
    MatrixPtr indef = load("small/indefinite2.mtx");
    kc_solve_options_init(&opts);
    const double e1[] = {1.0, 0.0};
    CHECK(kc_solve(indef.get(), e1, nullptr, &opts, &rep) ==
          KC_ERR_NOT_POSITIVE_DEFINITE);
    CHECK(std::strlen(kc_last_error()) > 0);

    const double zero[] = {0.0, 0.0};
    CHECK(kc_solve(m.get(), zero, nullptr, &opts, &rep) ==
          KC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("null-handle accessors are inert") {
    kc_matrix_free(nullptr);
    kc_report_free(nullptr);
    CHECK(kc_matrix_dim(nullptr) == 0);
    CHECK(kc_matrix_nnz(nullptr) == 0);
    CHECK(kc_report_iterations(nullptr) == 0);
    CHECK(kc_report_row_count(nullptr) == 0);
    kc_trace_row row;
    CHECK(kc_report_row(nullptr, 0, &row) == KC_ERR_INVALID_ARGUMENT);
}

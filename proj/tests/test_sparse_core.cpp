// SPDX-License-Identifier: Apache-2.0
/// @file test_sparse_core.cpp
/// @brief MatrixMarket parser, CSR storage, matvec, and quadratic form.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "error.hpp"
#include "matrix_market.hpp"
#include "test_util.hpp"

using namespace kcert;
using namespace kcert::testutil;

TEST_CASE("parser mirrors single-triangle input into both triangles") {
    std::istringstream in(
        "%%MatrixMarket matrix coordinate real symmetric\n"
        "2 2 3\n"
        "1 1 4.0\n"
        "2 1 1.0\n"
        "2 2 4.0\n");
    const CsrMatrix a = parse_matrix_market(in);
    CHECK(a.n == 2);
    CHECK(a.nnz() == 4);
    const Vec y = matvec(a, Vec{1.0, 0.0});
    CHECK(y[0] == 4.0);
    CHECK(y[1] == 1.0);
    const Vec y2 = matvec(a, Vec{0.0, 1.0});
    CHECK(y2[0] == 1.0);
    CHECK(y2[1] == 4.0);
}

TEST_CASE("parser accepts upper-triangle entries and comments") {
    std::istringstream in(
        "%%MatrixMarket matrix coordinate real symmetric\n"
        "% a comment line\n"
        "2 2 2\n"
        "1 2 1.0\n"
        "2 2 4.0\n");
    const CsrMatrix a = parse_matrix_market(in);
    CHECK(a.nnz() == 3);
    const Vec y = matvec(a, Vec{1.0, 1.0});
    CHECK(y[0] == 1.0);
    CHECK(y[1] == 5.0);
}

TEST_CASE("parser rejects malformed input with Parse errors") {
    auto expect_parse = [](const char* text) {
        std::istringstream in(text);
        CHECK_THROWS_AS((void)parse_matrix_market(in), Error);
        std::istringstream again(text);
        try {
            (void)parse_matrix_market(again);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Parse);
        }
    };
    SUBCASE("wrong banner symmetry") {
        expect_parse(
            "%%MatrixMarket matrix coordinate real general\n"
            "2 2 1\n1 1 1.0\n");
    }
    SUBCASE("non-square size") {
        expect_parse(
            "%%MatrixMarket matrix coordinate real symmetric\n"
            "2 3 1\n1 1 1.0\n");
    }
    SUBCASE("index out of range") {
        expect_parse(
            "%%MatrixMarket matrix coordinate real symmetric\n"
            "2 2 2\n1 1 4.0\n3 1 1.0\n");
    }
    SUBCASE("duplicate entry") {
        expect_parse(
            "%%MatrixMarket matrix coordinate real symmetric\n"
            "2 2 3\n1 1 4.0\n2 1 1.0\n1 1 5.0\n");
    }
    SUBCASE("entry count mismatch") {
        expect_parse(
            "%%MatrixMarket matrix coordinate real symmetric\n"
            "2 2 3\n1 1 4.0\n2 1 1.0\n");
    }
    SUBCASE("non-finite value") {
        expect_parse(
            "%%MatrixMarket matrix coordinate real symmetric\n"
            "2 2 2\n1 1 inf\n2 1 1.0\n");
    }
    SUBCASE("garbage value") {
        expect_parse(
            "%%MatrixMarket matrix coordinate real symmetric\n"
            "2 2 2\n1 1 4.0\n2 1 pineapple\n");
    }
}

TEST_CASE("read_matrix_market_file reports missing files as Io") {
    try {
        (void)read_matrix_market_file(fixture_path("does_not_exist.mtx"));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Io);
    }
}

TEST_CASE("small fixture files parse to the expected matrices") {
    const CsrMatrix d = read_matrix_market_file(fixture_path("small/diag12.mtx"));
    CHECK(d.n == 2);
    CHECK(d.nnz() == 2);
    const CsrMatrix m = read_matrix_market_file(fixture_path("small/mirror2.mtx"));
    const Vec y = matvec(m, Vec{1.0, 1.0});
    CHECK(y[0] == 5.0);
    CHECK(y[1] == 5.0);
}

TEST_CASE("matvec identity and dimension checking") {
    const CsrMatrix i5 =
        read_matrix_market_file(fixture_path("small/identity5.mtx"));
    const Vec v{1.0, -2.0, 3.0, -4.0, 5.0};
    const Vec y = matvec(i5, v);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(y[i] == v[i]);
    CHECK_THROWS_AS((void)matvec(i5, Vec{1.0, 2.0}), Error);
}

TEST_CASE("matvec on a fixture matches the dense oracle") {
    const CsrMatrix a = read_matrix_market_file(fixture_path("bcsstk05.mtx"));
    const DenseSym dense = DenseSym::from_csr(a);
    const Vec ones(static_cast<std::size_t>(a.n), 1.0);
    const Vec ys = matvec(a, ones);
    const Vec yd = dense.multiply(ones);
    double scale = 0.0;
    for (double v : yd) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < ys.size(); ++i) {
        CHECK(std::abs(ys[i] - yd[i]) <= 1e-13 * scale);
    }
}

TEST_CASE("columns extracted with basis vectors match stored entries") {
    for (const char* name : {"bcsstk05.mtx", "bcsstm19.mtx", "bcsstm20.mtx"}) {
        const CsrMatrix a = read_matrix_market_file(fixture_path(name));
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int> pick(0, a.n - 1);
        for (int trial = 0; trial < 5; ++trial) {
            const int col = pick(rng);
            Vec e(static_cast<std::size_t>(a.n), 0.0);
            e[static_cast<std::size_t>(col)] = 1.0;
            const Vec y = matvec(a, e);
            // Cross-check against a direct walk of the stored rows.
            for (int row = 0; row < a.n; ++row) {
                double want = 0.0;
                for (int idx = a.row_offsets[static_cast<std::size_t>(row)];
                     idx < a.row_offsets[static_cast<std::size_t>(row) + 1];
                     ++idx) {
                    if (a.col_indices[static_cast<std::size_t>(idx)] == col) {
                        want = a.values[static_cast<std::size_t>(idx)];
                    }
                }
                CHECK(y[static_cast<std::size_t>(row)] == want);
            }
        }
    }
}

TEST_CASE("quadratic form on hand examples") {
    const CsrMatrix d = read_matrix_market_file(fixture_path("small/diag12.mtx"));
    const Vec v{2.0 / 3.0, 2.0 / 3.0};
    CHECK(rel_diff(quadratic_form(d, v), 4.0 / 3.0) <= 1e-15);
    const CsrMatrix i5 =
        read_matrix_market_file(fixture_path("small/identity5.mtx"));
    const Vec w{1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK(quadratic_form(i5, w) == norm_sq(w));
}

TEST_CASE("quadratic form equals dot(v, A v) on random vectors") {
    for (const char* name : {"bcsstk05.mtx", "bcsstm19.mtx", "bcsstm20.mtx"}) {
        const CsrMatrix a = read_matrix_market_file(fixture_path(name));
        std::mt19937_64 rng(42);
        std::uniform_real_distribution<double> ud(-1.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            Vec v(static_cast<std::size_t>(a.n));
            for (double& vi : v) vi = ud(rng);
            const double qf = quadratic_form(a, v);
            const double dv = dot(v, matvec(a, v));
            CHECK(rel_diff(qf, dv) <= 1e-14);
        }
    }
}

TEST_CASE("write/parse round trip is lossless") {
    for (const char* name : {"bcsstk05.mtx", "small/diag12.mtx"}) {
        const CsrMatrix a = read_matrix_market_file(fixture_path(name));
        std::ostringstream out;
        write_matrix_market(out, a);
        std::istringstream in(out.str());
        const CsrMatrix b = parse_matrix_market(in);
        REQUIRE(a.n == b.n);
        REQUIRE(a.nnz() == b.nnz());
        CHECK(a.row_offsets == b.row_offsets);
        CHECK(a.col_indices == b.col_indices);
        CHECK(a.values == b.values);
    }
}

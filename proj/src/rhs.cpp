// SPDX-License-Identifier: Apache-2.0
/// @file rhs.cpp

#include "rhs.hpp"

#include <fstream>
#include <random>
#include <vector>

#include "dense_oracle.hpp"
#include "error.hpp"

namespace kcert {

namespace {

Vec read_vector_file(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open vector file: " + path);
    }
    Vec b;
    b.reserve(static_cast<std::size_t>(n));
    double v = 0.0;
    while (in >> v) b.push_back(v);
    if (!in.eof()) {
        throw Error(ErrorCode::Parse,
                    path + ": non-numeric content in vector file");
    }
    if (static_cast<int>(b.size()) != n) {
        throw Error(ErrorCode::Dimension,
                    path + ": vector file holds " + std::to_string(b.size()) +
                        " values, matrix dimension is " + std::to_string(n));
    }
    return b;
}

} // namespace

RhsSpec parse_rhs_spec(const std::string& text) {
    RhsSpec spec;
    if (text == "ones") {
        spec.mode = RhsMode::Ones;
        return spec;
    }
    if (text.rfind("file:", 0) == 0) {
        spec.mode = RhsMode::File;
        spec.path = text.substr(5);
        if (spec.path.empty()) {
            throw Error(ErrorCode::InvalidArgument,
                        "rhs spec 'file:' needs a path");
        }
        return spec;
    }
    if (text == "eigmin" || text.rfind("eigmin:", 0) == 0) {
        spec.mode = RhsMode::EigminPerturbed;
        if (text.size() > 7) {
            try {
                spec.scale = std::stod(text.substr(7));
            } catch (const std::exception&) {
                throw Error(ErrorCode::InvalidArgument,
                            "rhs spec 'eigmin:' needs a numeric scale");
            }
            if (spec.scale < 0.0) {
                throw Error(ErrorCode::InvalidArgument,
                            "rhs perturbation scale must be >= 0");
            }
        }
        return spec;
    }
    throw Error(ErrorCode::InvalidArgument,
                "unknown rhs spec '" + text +
                    "' (expected ones, file:PATH, eigmin, or eigmin:SCALE)");
}

Vec make_rhs(const RhsSpec& spec, const CsrMatrix& a, std::uint64_t seed) {
    const int n = a.n;
    switch (spec.mode) {
        case RhsMode::Ones:
            return Vec(static_cast<std::size_t>(n), 1.0);
        case RhsMode::File:
            return read_vector_file(spec.path, n);
        case RhsMode::EigminPerturbed:
            break;
    }

    const DenseSym dense = DenseSym::from_csr(a);
    Vec v;
    if (n == 1) {
        v.assign(1, 1.0);
    } else {
        const std::vector<double> eigs = dense_eigenvalues(dense);
        v = smallest_eigenvector(dense, eigs[0], eigs[1]);
    }

    // Component-wise (1 + u) perturbation, u uniform in (-scale, scale).
    // The raw 64-bit stream is mapped to [0,1) explicitly so the vector is
    // a pure function of the seed.
    std::mt19937_64 gen(seed);
    for (auto& vi : v) {
        const double w =
            static_cast<double>(gen() >> 11) * 0x1.0p-53;  // [0, 1)
        vi *= 1.0 + spec.scale * (2.0 * w - 1.0);
    }
    return v;
}

} // namespace kcert

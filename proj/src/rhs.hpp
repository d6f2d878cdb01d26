// SPDX-License-Identifier: Apache-2.0
/// @file rhs.hpp
/// @brief Right-hand-side generation for solver runs: all-ones, vector
///        files, and the perturbed smallest-eigenvector scenario.

#ifndef KCERT_RHS_HPP
#define KCERT_RHS_HPP

#include <cstdint>
#include <string>

#include "csr_matrix.hpp"
#include "vec.hpp"

namespace kcert {

enum class RhsMode {
    Ones,
    File,
    EigminPerturbed,
};

struct RhsSpec {
    RhsMode mode = RhsMode::Ones;
    std::string path;     ///< used by File
    double scale = 0.01;  ///< used by EigminPerturbed
};

/// Parse the CLI form: "ones", "file:PATH", "eigmin", or "eigmin:SCALE".
RhsSpec parse_rhs_spec(const std::string& text);

/// Build the right-hand side. EigminPerturbed takes the unit eigenvector of
/// the smallest eigenvalue (dense spectrum required, so n is capped) and
/// multiplies each component by (1 + u) with u uniform in (-scale, scale),
/// drawn from a seeded generator; identical seeds give identical vectors.
Vec make_rhs(const RhsSpec& spec, const CsrMatrix& a, std::uint64_t seed);

} // namespace kcert

#endif // KCERT_RHS_HPP

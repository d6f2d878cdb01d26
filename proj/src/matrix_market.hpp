// SPDX-License-Identifier: Apache-2.0
/// @file matrix_market.hpp
/// @brief Reader/writer for MatrixMarket coordinate files (real symmetric).

#ifndef KCERT_MATRIX_MARKET_HPP
#define KCERT_MATRIX_MARKET_HPP

#include <iosfwd>
#include <string>

#include "csr_matrix.hpp"

namespace kcert {

/// Parsed "%%MatrixMarket ..." banner plus the size line.
struct MatrixMarketHeader {
    std::string object;     ///< must be "matrix"
    std::string format;     ///< must be "coordinate"
    std::string field;      ///< must be "real"
    std::string symmetry;   ///< must be "symmetric"
    int rows = 0;
    int cols = 0;
    long entries = 0;
};

/// Parse a symmetric real coordinate file. Entries may sit in either
/// triangle; they are mirrored so the result stores both triangles.
/// Throws Error(Parse) with a line number on any malformed input:
/// wrong banner tags, non-square size, out-of-range or duplicate indices,
/// non-finite values, or an entry count that disagrees with the header.
CsrMatrix parse_matrix_market(std::istream& in);

CsrMatrix read_matrix_market_file(const std::string& path);

/// Canonical form: banner, size line, then the lower triangle in row-major
/// order with 17 significant digits. parse -> write -> parse is lossless.
void write_matrix_market(std::ostream& out, const CsrMatrix& a);

} // namespace kcert

#endif // KCERT_MATRIX_MARKET_HPP

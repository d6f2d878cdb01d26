// SPDX-License-Identifier: Apache-2.0

#include "matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "error.hpp"

namespace kcert {

namespace {

[[noreturn]] void fail(long line_no, const std::string& msg) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + msg);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

bool next_content_line(std::istream& in, std::string& line, long& line_no) {
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos) continue;   // blank
        if (line[pos] == '%') continue;           // comment
        return true;
    }
    return false;
}

MatrixMarketHeader parse_header(std::istream& in, long& line_no) {
    std::string banner;
    if (!std::getline(in, banner)) fail(1, "empty file");
    ++line_no;
    std::istringstream bs(banner);
    std::string tag;
    MatrixMarketHeader h;
    bs >> tag >> h.object >> h.format >> h.field >> h.symmetry;
    if (tag != "%%MatrixMarket") fail(line_no, "missing %%MatrixMarket banner");
    h.object = lower(h.object);
    h.format = lower(h.format);
    h.field = lower(h.field);
    h.symmetry = lower(h.symmetry);
    if (h.object != "matrix") fail(line_no, "object must be 'matrix', got '" + h.object + "'");
    if (h.format != "coordinate") fail(line_no, "format must be 'coordinate', got '" + h.format + "'");
    if (h.field != "real") fail(line_no, "field must be 'real', got '" + h.field + "'");
    if (h.symmetry != "symmetric") fail(line_no, "symmetry must be 'symmetric', got '" + h.symmetry + "'");

    std::string line;
    if (!next_content_line(in, line, line_no)) fail(line_no, "missing size line");
    std::istringstream ss(line);
    if (!(ss >> h.rows >> h.cols >> h.entries)) fail(line_no, "malformed size line");
    std::string extra;
    if (ss >> extra) fail(line_no, "trailing tokens on size line");
    if (h.rows <= 0 || h.cols <= 0) fail(line_no, "dimensions must be positive");
    if (h.rows != h.cols) fail(line_no, "matrix must be square for symmetric storage");
    if (h.entries < 0) fail(line_no, "negative entry count");
    return h;
}

} // namespace

CsrMatrix parse_matrix_market(std::istream& in) {
    long line_no = 0;
    MatrixMarketHeader h = parse_header(in, line_no);
    const int n = h.rows;

    // (row, col, value) with row >= col after normalization
    std::vector<std::tuple<int, int, double>> entries;
    entries.reserve(static_cast<std::size_t>(h.entries));

    std::string line;
    for (long e = 0; e < h.entries; ++e) {
        if (!next_content_line(in, line, line_no)) {
            fail(line_no, "file ends after " + std::to_string(e) + " of " +
                              std::to_string(h.entries) + " declared entries");
        }
        std::istringstream ss(line);
        int i = 0, j = 0;
        double v = 0.0;
        if (!(ss >> i >> j >> v)) fail(line_no, "malformed entry line '" + line + "'");
        std::string extra;
        if (ss >> extra) fail(line_no, "trailing tokens on entry line");
        if (i < 1 || i > n || j < 1 || j > n) {
            fail(line_no, "index (" + std::to_string(i) + "," + std::to_string(j) +
                              ") out of range for dimension " + std::to_string(n));
        }
        if (!std::isfinite(v)) fail(line_no, "non-finite value");
        if (j > i) std::swap(i, j);
        entries.emplace_back(i - 1, j - 1, v);
    }
    if (next_content_line(in, line, line_no)) {
        fail(line_no, "more entries than the " + std::to_string(h.entries) +
                          " declared in the header");
    }

    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) {
                  return std::tie(std::get<0>(a), std::get<1>(a)) <
                         std::tie(std::get<0>(b), std::get<1>(b));
              });
    for (std::size_t e = 1; e < entries.size(); ++e) {
        if (std::get<0>(entries[e]) == std::get<0>(entries[e - 1]) &&
            std::get<1>(entries[e]) == std::get<1>(entries[e - 1])) {
            fail(0, "duplicate entry at (" + std::to_string(std::get<0>(entries[e]) + 1) +
                        "," + std::to_string(std::get<1>(entries[e]) + 1) + ")");
        }
    }

    // mirror the strict lower entries and emit rows with sorted columns
    std::vector<std::vector<std::pair<int, double>>> rows(n);
    for (const auto& [i, j, v] : entries) {
        rows[i].emplace_back(j, v);
        if (i != j) rows[j].emplace_back(i, v);
    }
    CsrMatrix a;
    a.n = n;
    a.row_offsets.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        std::sort(rows[i].begin(), rows[i].end());
        a.row_offsets[i + 1] = a.row_offsets[i] + static_cast<int>(rows[i].size());
        for (const auto& [j, v] : rows[i]) {
            a.col_indices.push_back(j);
            a.values.push_back(v);
        }
    }
    return a;
}

CsrMatrix read_matrix_market_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    try {
        return parse_matrix_market(in);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Parse) {
            throw Error(ErrorCode::Parse, path + ": " + e.what());
        }
        throw;
    }
}

void write_matrix_market(std::ostream& out, const CsrMatrix& a) {
    long entries = 0;
    for (int i = 0; i < a.n; ++i) {
        for (int p = a.row_offsets[i]; p < a.row_offsets[i + 1]; ++p) {
            if (a.col_indices[p] <= i) ++entries;
        }
    }
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << a.n << " " << a.n << " " << entries << "\n";
    char buf[64];
    for (int i = 0; i < a.n; ++i) {
        for (int p = a.row_offsets[i]; p < a.row_offsets[i + 1]; ++p) {
            if (a.col_indices[p] > i) continue;
            std::snprintf(buf, sizeof(buf), "%.17g", a.values[p]);
            out << (i + 1) << " " << (a.col_indices[p] + 1) << " " << buf << "\n";
        }
    }
}

} // namespace kcert

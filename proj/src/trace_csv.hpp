// SPDX-License-Identifier: Apache-2.0
/// @file trace_csv.hpp
/// @brief Deterministic CSV serialization of solve traces.
///
/// The trace is the artifact's figure data, so the format is pinned:
/// '#'-prefixed summary lines, one header row, then one row per iteration k.
/// All floating-point values print with %.17g (round-trip exact), so a fixed
/// seed and config reproduce the file byte for byte. Wall-clock timings stay
/// out of the file for the same reason.

#ifndef KCERT_TRACE_CSV_HPP
#define KCERT_TRACE_CSV_HPP

#include <ostream>
#include <string>

#include "solver.hpp"

namespace kcert {

/// Run identification echoed into the summary block.
struct TraceMeta {
    std::string matrix_label;
    std::string rhs_label;
    int n = 0;
};

/// %.17g rendering used for every floating-point cell.
std::string format_double(double v);

/// The '+'-joined failure token list for an estimate row ("-" when clean).
std::string format_flags(unsigned flags);

/// Write the full trace: summary comments, header, rows. Truth columns are
/// appended when the report rows carry them.
void write_trace_csv(std::ostream& out, const TraceMeta& meta,
                     const SolveConfig& cfg, const SolveReport& rep);

} // namespace kcert

#endif // KCERT_TRACE_CSV_HPP

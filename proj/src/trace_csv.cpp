// SPDX-License-Identifier: Apache-2.0
/// @file trace_csv.cpp

#include "trace_csv.hpp"

#include <cstdio>

namespace kcert {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_flags(unsigned flags) {
    static const struct {
        unsigned bit;
        const char* name;
    } kTokens[] = {
        {kFlagGauss, "gauss"},
        {kFlagRadauUpper, "radau_upper"},
        {kFlagRadauLower, "radau_lower"},
        {kFlagLobatto, "lobatto"},
        {kFlagL2, "l2"},
        {kFlagRelUndefined, "rel"},
    };
    std::string out;
    for (const auto& t : kTokens) {
        if (!(flags & t.bit)) continue;
        if (!out.empty()) out += '+';
        out += t.name;
    }
    return out.empty() ? "-" : out;
}

void write_trace_csv(std::ostream& out, const TraceMeta& meta,
                     const SolveConfig& cfg, const SolveReport& rep) {
    const bool truth = cfg.with_truth;

    out << "# krylov_certify trace v1\n";
    out << "# matrix = " << meta.matrix_label << "\n";
    out << "# n = " << meta.n << "\n";
    out << "# rhs = " << meta.rhs_label << "\n";
    out << "# criterion = " << criterion_name(cfg.criterion) << "\n";
    out << "# tol = " << format_double(cfg.tol) << "\n";
    out << "# delay = " << cfg.delay << "\n";
    out << "# window = " << cfg.window << "\n";
    out << "# variant = " << variant_name(cfg.variant) << "\n";
    out << "# eig_source = " << eig_source_name(cfg.eig_source);
    if (cfg.eig_source == EigSource::Fixed) {
        out << " a = " << format_double(cfg.fixed_a)
            << " b = " << format_double(cfg.fixed_b);
    }
    out << "\n";
    out << "# seed = " << cfg.seed << "\n";
    out << "# iterations = " << rep.iterations << "\n";
    out << "# stop_reason = " << stop_reason_name(rep.stop_reason) << "\n";
    out << "# final_rel_residue = " << format_double(rep.final_rel_residue)
        << "\n";
    out << "# beta_metric = " << format_double(rep.beta_metric) << "\n";
    out << "# delta_metric = " << format_double(rep.delta_metric) << "\n";
    if (truth || cfg.eig_source == EigSource::Oracle) {
        out << "# lambda_min = " << format_double(rep.lambda_min) << "\n";
        out << "# lambda_max = " << format_double(rep.lambda_max) << "\n";
        out << "# kappa = " << format_double(rep.kappa) << "\n";
    }

    out << "k,rel_residue,f_k,g_k,a_tilde,gauss_lower,radau_upper,"
           "lobatto_upper,rel_anorm_upper,l2_estimate,rel_l2_estimate,"
           "failed_flags";
    if (truth) {
        out << ",rel_residue_anorm,true_anorm,true_rel_anorm,true_l2,"
               "true_rel_l2";
    }
    out << "\n";

    for (const TraceRow& row : rep.rows) {
        out << row.k << ',' << format_double(row.rel_residue) << ','
            << format_double(row.f_k) << ',' << format_double(row.g_k) << ','
            << format_double(row.a_tilde) << ',';
        if (row.has_estimate) {
            const ErrorEstimate& e = row.estimate;
            out << format_double(e.gauss_lower_sq) << ','
                << format_double(e.radau_upper_sq) << ','
                << format_double(e.lobatto_upper_sq) << ','
                << format_double(e.rel_anorm_upper) << ','
                << format_double(e.l2_estimate_sq) << ','
                << format_double(e.rel_l2_estimate) << ','
                << format_flags(e.flags);
        } else {
            out << ",,,,,,-";
        }
        if (truth) {
            out << ',' << format_double(row.rel_residue_anorm) << ','
                << format_double(row.true_anorm) << ','
                << format_double(row.true_rel_anorm) << ','
                << format_double(row.true_l2) << ','
                << format_double(row.true_rel_l2);
        }
        out << "\n";
    }
}

} // namespace kcert

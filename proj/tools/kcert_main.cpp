// SPDX-License-Identifier: Apache-2.0
/// @file kcert_main.cpp
/// @brief kcert command-line tool: solve / spectrum / compare.
///
/// Front end over the krylov_certify C API. `solve` runs one instrumented
/// CG solve and emits the per-iteration CSV trace; `spectrum` prints the
/// dense-oracle extremal eigenvalues; `compare` runs a single deep solve
/// and evaluates each stopping criterion offline against the same trace,
/// reporting where each would have stopped and the true error at that point.
///
/// Exit codes: 0 success; 1 internal error; 2 bad usage or configuration;
/// 3 I/O, parse, or dimension failure; 4 numerical failure (not positive
/// definite, singular, oracle size cap); 5 max iterations exhausted without
/// meeting the stopping criterion.
///
/// The environment variable KRYLOV_CERTIFY_LOG selects stderr verbosity:
/// 0 silent, 1 one-line run summary (default), 2 adds config echo and
/// timing breakdown.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "krylov_certify.h"

namespace {

int g_log_level = 1;

int exit_code_for(kc_status status) {
    switch (status) {
        case KC_OK: return 0;
        case KC_ERR_INVALID_ARGUMENT: return 2;
        case KC_ERR_IO:
        case KC_ERR_PARSE:
        case KC_ERR_DIMENSION: return 3;
        case KC_ERR_NOT_POSITIVE_DEFINITE:
        case KC_ERR_SINGULAR:
        case KC_ERR_TOO_LARGE: return 4;
        case KC_ERR_MAX_ITERATIONS: return 5;
        case KC_ERR_INTERNAL: return 1;
    }
    return 1;
}

int report_failure(const char* what, kc_status status) {
    std::fprintf(stderr, "kcert: %s: %s (%s)\n", what, kc_last_error(),
                 kc_status_name(status));
    return exit_code_for(status);
}

struct MatrixDeleter {
    void operator()(kc_matrix* m) const { kc_matrix_free(m); }
};
struct ReportDeleter {
    void operator()(kc_report* r) const { kc_report_free(r); }
};
using MatrixPtr = std::unique_ptr<kc_matrix, MatrixDeleter>;
using ReportPtr = std::unique_ptr<kc_report, ReportDeleter>;

/// Shared solve-ish options (solve and compare take the same knobs).
struct RunArgs {
    std::string matrix_path;
    std::string rhs = "ones";
    double tol = 1e-8;
    int max_iter = 0;
    std::string criterion = "rel_anorm";
    int delay = 4;
    int window = 10;
    std::string variant = "over-n";
    std::string eig = "estimated";
    std::uint64_t seed = 0;
    std::string out_path;
    bool oracle = false;
};

void add_common_options(CLI::App* cmd, RunArgs& args, bool with_criterion) {
    cmd->add_option("--matrix", args.matrix_path,
                    "MatrixMarket file (coordinate real symmetric)")
        ->required();
    cmd->add_option("--rhs", args.rhs,
                    "right-hand side: ones | file:PATH | eigmin[:SCALE]");
    cmd->add_option("--tol", args.tol, "stopping tolerance");
    cmd->add_option("--max-iter", args.max_iter,
                    "iteration cap (default 4n when omitted or <= 0)");
    if (with_criterion) {
        cmd->add_option("--criterion", args.criterion,
                        "stopping criterion: rel_anorm | rel_l2 | rel_residue");
    }
    cmd->add_option("--delay", args.delay,
                    "estimate delay d (bounds for iterate k arrive at k+d)");
    cmd->add_option("--window", args.window, "look-ahead regression window m");
    cmd->add_option("--variant", args.variant,
                    "look-ahead scaling: over-n | over-k");
    cmd->add_option("--eig", args.eig,
                    "eigenvalue source: estimated | oracle | fixed:A,B");
    cmd->add_option("--seed", args.seed, "seed for the rhs perturbation");
    cmd->add_option("--out", args.out_path, "CSV output path (default stdout)");
    cmd->add_flag("--oracle", args.oracle,
                  "dense-oracle truth columns in the trace (n capped)");
}

bool parse_criterion(const std::string& text, int32_t& out) {
    if (text == "rel_anorm") {
        out = KC_CRITERION_REL_ANORM;
    } else if (text == "rel_l2") {
        out = KC_CRITERION_REL_L2;
    } else if (text == "rel_residue") {
        out = KC_CRITERION_REL_RESIDUE;
    } else {
        return false;
    }
    return true;
}

/// Fill options from args; returns empty string on success, else the
/// complaint.
std::string build_options(const RunArgs& args, kc_solve_options& opts) {
    kc_solve_options_init(&opts);
    opts.tol = args.tol;
    opts.max_iter = args.max_iter;
    opts.delay = args.delay;
    opts.window = args.window;
    opts.seed = args.seed;
    opts.with_truth = args.oracle ? 1 : 0;

    if (!parse_criterion(args.criterion, opts.criterion)) {
        return "unknown criterion '" + args.criterion + "'";
    }
    if (args.variant == "over-n") {
        opts.variant = KC_VARIANT_OVER_N;
    } else if (args.variant == "over-k") {
        opts.variant = KC_VARIANT_OVER_K;
    } else {
        return "unknown variant '" + args.variant + "'";
    }
    if (args.eig == "estimated") {
        opts.eig_source = KC_EIG_ESTIMATED;
    } else if (args.eig == "oracle") {
        opts.eig_source = KC_EIG_ORACLE;
    } else if (args.eig.rfind("fixed:", 0) == 0) {
        opts.eig_source = KC_EIG_FIXED;
        const std::string pair = args.eig.substr(6);
        const std::size_t comma = pair.find(',');
        if (comma == std::string::npos) {
            return "--eig fixed needs the form fixed:A,B";
        }
        try {
            opts.fixed_a = std::stod(pair.substr(0, comma));
            opts.fixed_b = std::stod(pair.substr(comma + 1));
        } catch (const std::exception&) {
            return "--eig fixed needs numeric nodes, got '" + pair + "'";
        }
    } else {
        return "unknown eigenvalue source '" + args.eig + "'";
    }
    return "";
}

int load_matrix_and_rhs(const RunArgs& args, MatrixPtr& matrix,
                        std::vector<double>& b) {
    kc_matrix* raw = nullptr;
    kc_status st = kc_matrix_read_file(args.matrix_path.c_str(), &raw);
    if (st != KC_OK) return report_failure(args.matrix_path.c_str(), st);
    matrix.reset(raw);

    b.assign(static_cast<std::size_t>(kc_matrix_dim(matrix.get())), 0.0);
    st = kc_make_rhs(matrix.get(), args.rhs.c_str(), args.seed, b.data());
    if (st != KC_OK) return report_failure("building rhs", st);
    return 0;
}

void log_summary(const RunArgs& args, const kc_report* rep) {
    if (g_log_level < 1) return;
    static const char* kReasons[] = {"criterion_met", "exact_termination",
                                     "max_iterations"};
    std::fprintf(stderr,
                 "kcert: %s: %d iterations, stop = %s, rel_residue = %.3e\n",
                 args.matrix_path.c_str(), kc_report_iterations(rep),
                 kReasons[kc_report_stop_reason(rep)],
                 kc_report_final_rel_residue(rep));
    if (g_log_level >= 2) {
        std::fprintf(stderr,
                     "kcert: criterion = %s, tol = %.3e, delay = %d, "
                     "window = %d, variant = %s, eig = %s, seed = %" PRIu64
                     "\n",
                     args.criterion.c_str(), args.tol, args.delay, args.window,
                     args.variant.c_str(), args.eig.c_str(), args.seed);
        std::fprintf(stderr,
                     "kcert: matvec %.6f s, estimator %.6f s, beta = %.6g, "
                     "delta = %.6g\n",
                     kc_report_matvec_seconds(rep),
                     kc_report_estimator_seconds(rep),
                     kc_report_beta_metric(rep), kc_report_delta_metric(rep));
    }
}

int cmd_solve(const RunArgs& args) {
    kc_solve_options opts;
    const std::string complaint = build_options(args, opts);
    if (!complaint.empty()) {
        std::fprintf(stderr, "kcert: %s\n", complaint.c_str());
        return 2;
    }

    MatrixPtr matrix;
    std::vector<double> b;
    if (int rc = load_matrix_and_rhs(args, matrix, b)) return rc;

    kc_report* raw = nullptr;
    kc_status st =
        kc_solve(matrix.get(), b.data(), args.rhs.c_str(), &opts, &raw);
    if (st != KC_OK) return report_failure("solve", st);
    ReportPtr rep(raw);

    st = kc_report_write_csv(rep.get(),
                             args.out_path.empty() ? nullptr
                                                   : args.out_path.c_str());
    if (st != KC_OK) return report_failure("writing trace", st);

    log_summary(args, rep.get());
    if (kc_report_stop_reason(rep.get()) == KC_STOP_MAX_ITERATIONS) {
        std::fprintf(stderr,
                     "kcert: max iterations reached without meeting the "
                     "stopping criterion\n");
        return 5;
    }
    return 0;
}

int cmd_spectrum(const std::string& path) {
    kc_matrix* raw = nullptr;
    kc_status st = kc_matrix_read_file(path.c_str(), &raw);
    if (st != KC_OK) return report_failure(path.c_str(), st);
    MatrixPtr matrix(raw);

    double lo = 0.0;
    double hi = 0.0;
    st = kc_matrix_spectrum(matrix.get(), &lo, &hi);
    if (st != KC_OK) return report_failure("spectrum", st);

    std::printf("n = %d\n", kc_matrix_dim(matrix.get()));
    std::printf("nnz = %" PRId64 "\n", kc_matrix_nnz(matrix.get()));
    std::printf("lambda_min = %.17g\n", lo);
    std::printf("lambda_max = %.17g\n", hi);
    std::printf("kappa = %.17g\n", hi / lo);
    return 0;
}

struct CriterionStop {
    std::string name;
    bool stopped = false;
    int k = 0;
    double quantity = 0.0;
    bool has_quantity = false;
    double true_rel_anorm = 0.0;
    double true_rel_l2 = 0.0;
};

/// First iteration at which `criterion` would have stopped a live run with
/// this tolerance, replayed from the deep reference trace: bound rows only
/// count once their delayed estimate would have existed (k_current = j + d),
/// and exact termination of the reference stops every criterion.
CriterionStop replay_criterion(const kc_report* rep, int32_t criterion,
                               double tol, int delay, int exact_k) {
    CriterionStop out;
    const int32_t rows = kc_report_row_count(rep);
    for (int32_t i = 0; i < rows; ++i) {
        kc_trace_row row;
        if (kc_report_row(rep, i, &row) != KC_OK) break;

        int stop_k = 0;
        double quantity = 0.0;
        bool hit = false;
        if (criterion == KC_CRITERION_REL_RESIDUE) {
            if (row.rel_residue < tol) {
                stop_k = row.k;
                quantity = row.rel_residue;
                hit = true;
            }
        } else if (row.has_estimate) {
            const int avail_at = row.k + delay;
            const bool live_row = avail_at <= exact_k;
            if (live_row) {
                if (criterion == KC_CRITERION_REL_ANORM) {
                    const unsigned bad = KC_FLAG_REL_UNDEFINED;
                    if (!(row.failed_flags & bad) &&
                        row.rel_anorm_upper == row.rel_anorm_upper &&
                        row.rel_anorm_upper < tol) {
                        stop_k = avail_at;
                        quantity = row.rel_anorm_upper;
                        hit = true;
                    }
                } else {
                    const unsigned bad = KC_FLAG_L2 | KC_FLAG_REL_UNDEFINED;
                    if (!(row.failed_flags & bad) &&
                        row.rel_l2_estimate == row.rel_l2_estimate &&
                        row.rel_l2_estimate < tol) {
                        stop_k = avail_at;
                        quantity = row.rel_l2_estimate;
                        hit = true;
                    }
                }
            }
        }
        if (hit) {
            out.stopped = true;
            out.k = stop_k;
            out.quantity = quantity;
            out.has_quantity = true;
            break;
        }
    }

    // The reference run's own hard stop (exact termination or fp floor)
    // stops a live run under any criterion.
    if (exact_k > 0 && (!out.stopped || out.k > exact_k)) {
        out.stopped = true;
        out.k = exact_k;
        out.has_quantity = false;
    }

    if (out.stopped && out.k >= 1) {
        kc_trace_row row;
        if (kc_report_row(rep, out.k - 1, &row) == KC_OK && row.has_truth) {
            out.true_rel_anorm = row.true_rel_anorm;
            out.true_rel_l2 = row.true_rel_l2;
        }
    }
    return out;
}

int cmd_compare(const RunArgs& args, const std::string& criteria_csv) {
    // Deep reference run: residue-driven far below the comparison tolerance,
    // truth columns on, so every criterion can be replayed offline.
    RunArgs deep = args;
    deep.criterion = "rel_residue";
    deep.oracle = true;

    kc_solve_options opts;
    const std::string complaint = build_options(deep, opts);
    if (!complaint.empty()) {
        std::fprintf(stderr, "kcert: %s\n", complaint.c_str());
        return 2;
    }
    opts.tol = std::max(args.tol * 1e-9, 1e-15);

    MatrixPtr matrix;
    std::vector<double> b;
    if (int rc = load_matrix_and_rhs(deep, matrix, b)) return rc;

    kc_report* raw = nullptr;
    kc_status st =
        kc_solve(matrix.get(), b.data(), deep.rhs.c_str(), &opts, &raw);
    if (st != KC_OK) return report_failure("reference solve", st);
    ReportPtr rep(raw);

    // Whatever ended the reference run (exact termination, fp floor, tiny
    // residue tolerance, or the iteration cap) also ends every replay: the
    // trace holds no iterations past it.
    const int exact_k = kc_report_iterations(rep.get());

    std::vector<std::string> names;
    std::size_t begin = 0;
    while (begin <= criteria_csv.size()) {
        const std::size_t comma = criteria_csv.find(',', begin);
        const std::string token =
            criteria_csv.substr(begin, comma == std::string::npos
                                           ? std::string::npos
                                           : comma - begin);
        if (!token.empty()) names.push_back(token);
        if (comma == std::string::npos) break;
        begin = comma + 1;
    }
    if (names.empty()) {
        std::fprintf(stderr, "kcert: --criteria list is empty\n");
        return 2;
    }

    std::printf("# kcert compare: matrix = %s, rhs = %s, tol = %.17g\n",
                args.matrix_path.c_str(), args.rhs.c_str(), args.tol);
    std::printf("# reference run: %d iterations, stop = %d, kappa = %.17g\n",
                kc_report_iterations(rep.get()),
                kc_report_stop_reason(rep.get()),
                kc_report_kappa(rep.get()));
    std::printf("criterion,stop_k,quantity,true_rel_anorm,true_rel_l2\n");

    for (const std::string& name : names) {
        int32_t criterion = 0;
        if (!parse_criterion(name, criterion)) {
            std::fprintf(stderr, "kcert: unknown criterion '%s'\n",
                         name.c_str());
            return 2;
        }
        const CriterionStop stop = replay_criterion(
            rep.get(), criterion, args.tol, args.delay, exact_k);
        if (!stop.stopped) {
            std::printf("%s,-,-,-,-\n", name.c_str());
            continue;
        }
        std::printf("%s,%d,", name.c_str(), stop.k);
        if (stop.has_quantity) {
            std::printf("%.17g", stop.quantity);
        } else {
            std::printf("-");
        }
        std::printf(",%.17g,%.17g\n", stop.true_rel_anorm, stop.true_rel_l2);
    }

    log_summary(deep, rep.get());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* lvl = std::getenv("KRYLOV_CERTIFY_LOG")) {
        g_log_level = std::atoi(lvl);
    }

    CLI::App app{"kcert: CG solver with built-in error certification"};
    app.require_subcommand(1);

    RunArgs solve_args;
    CLI::App* solve = app.add_subcommand(
        "solve", "run one instrumented solve and emit the CSV trace");
    add_common_options(solve, solve_args, true);

    std::string spectrum_path;
    CLI::App* spectrum = app.add_subcommand(
        "spectrum", "print dense-oracle extremal eigenvalues");
    spectrum->add_option("--matrix", spectrum_path, "MatrixMarket file")
        ->required();

    RunArgs compare_args;
    std::string criteria_csv = "rel_residue,rel_anorm,rel_l2";
    CLI::App* compare = app.add_subcommand(
        "compare",
        "one deep solve; replay each stopping criterion against its trace");
    add_common_options(compare, compare_args, false);
    compare->add_option("--criteria", criteria_csv,
                        "comma-separated criteria to replay");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help requests exit 0; every other usage problem maps to 2.
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (solve->parsed()) return cmd_solve(solve_args);
    if (spectrum->parsed()) return cmd_spectrum(spectrum_path);
    if (compare->parsed()) return cmd_compare(compare_args, criteria_csv);
    return 2;
}

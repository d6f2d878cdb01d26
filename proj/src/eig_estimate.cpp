// SPDX-License-Identifier: Apache-2.0

#include "eig_estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace kcert {

double regress_decay(std::span<const double> f_seq, int k, int m) {
    if (k < 1 || k > static_cast<int>(f_seq.size())) {
        throw Error(ErrorCode::InvalidArgument, "regress_decay: k out of range");
    }
    if (m < 1) throw Error(ErrorCode::InvalidArgument, "regress_decay: window < 1");
    const double fk = f_seq[k - 1];
    if (!(fk > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "regress_decay: f values must be positive");
    }
    double num = 0.0;
    double den = 0.0;
    for (int i = std::max(1, k - m); i <= k - 1; ++i) {
        const double w = static_cast<double>(k - i) / k;
        num += w * std::log(f_seq[i - 1] / fk);
        den += w * w;
    }
    return den > 0.0 ? num / den : 0.0;
}

double look_ahead_underestimate(double f_k, double slope, int k, int dimension,
                                LookAheadVariant variant) {
    // The final value is pinned exactly: at k = dimension the Krylov space is
    // complete and f_k is the true extremal eigenvalue, so no look-ahead.
    if (k >= dimension) return f_k;
    if (k < 3) return f_k * std::exp(-1.0);
    const double remaining = std::max(0.0, static_cast<double>(dimension - k));
    const double factor = variant == LookAheadVariant::OverN
                              ? remaining / dimension
                              : remaining / k;
    return f_k * std::exp(-slope * factor);
}

double largest_estimate(double g_k) { return g_k * (1.0 + 1e-8); }

double beta_metric(std::span<const double> f_seq) {
    double sum = 0.0;
    int count = 0;
    for (std::size_t i = 0; i + 2 < f_seq.size(); ++i) {
        const double den = f_seq[i] - f_seq[i + 1];
        if (den == 0.0) continue;
        sum += (f_seq[i + 1] - f_seq[i + 2]) / den;
        ++count;
    }
    if (count == 0) return std::numeric_limits<double>::quiet_NaN();
    return sum / count;
}

double delta_metric(std::span<const double> f_seq,
                    std::span<const double> underestimates, double a) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < f_seq.size(); ++i) {
        num += (a - underestimates[i]) * (a - underestimates[i]);
        den += (f_seq[i] - a) * (f_seq[i] - a);
    }
    if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return num / den;
}

void EigenTrace::append(double f, double g) {
    if (!ritz_min.empty()) {
        f = std::min(f, ritz_min.back());
        g = std::max(g, ritz_max.back());
    }
    ritz_min.push_back(f);
    ritz_max.push_back(g);
    const int k = static_cast<int>(ritz_min.size());
    const double slope = regress_decay(ritz_min, k, window);
    underestimate.push_back(
        look_ahead_underestimate(f, slope, k, dimension, variant));
}

} // namespace kcert

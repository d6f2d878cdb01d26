// SPDX-License-Identifier: Apache-2.0
/// @file vec.hpp
/// @brief Small dense vector helpers used across the solver.

#ifndef KCERT_VEC_HPP
#define KCERT_VEC_HPP

#include <cmath>
#include <span>
#include <vector>

namespace kcert {

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_sq(std::span<const double> a) { return dot(a, a); }

inline double norm(std::span<const double> a) { return std::sqrt(norm_sq(a)); }

/// y += a * x
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

/// d = r + beta * d
inline void update_direction(std::span<const double> r, double beta,
                             std::span<double> d) {
    for (std::size_t i = 0; i < r.size(); ++i) d[i] = r[i] + beta * d[i];
}

} // namespace kcert

#endif // KCERT_VEC_HPP

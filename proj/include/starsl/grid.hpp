// grid.hpp — the uniform grid on [0, pi] and composite-trapezoid quadrature.
#pragma once

#include <span>
#include <vector>

#include "starsl/common.hpp"

namespace starsl {

struct Grid {
    int M;  // number of subintervals; M+1 nodes x_i = i*pi/M

    explicit Grid(int subintervals) : M(subintervals) {
        if (M < 16) throw invalid_input_error("Grid: need M >= 16 subintervals");
    }

    double h() const { return pi / M; }
    double x(int i) const { return pi * i / M; }
    int nodes() const { return M + 1; }
};

// Composite trapezoid of nodal samples over [0, pi].
inline double trapezoid(std::span<const double> f) {
    const int M = static_cast<int>(f.size()) - 1;
    double s = 0.5 * (f[0] + f[M]);
    for (int i = 1; i < M; ++i) s += f[i];
    return s * (pi / M);
}

inline double l2_norm_grid(std::span<const double> f) {
    const int M = static_cast<int>(f.size()) - 1;
    double s = 0.5 * (f[0] * f[0] + f[M] * f[M]);
    for (int i = 1; i < M; ++i) s += f[i] * f[i];
    return std::sqrt(s * (pi / M));
}

}  // namespace starsl

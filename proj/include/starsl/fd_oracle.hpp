// fd_oracle.hpp — brute-force eigenvalue oracle for validation.
//
// Second-order finite differences on the whole star: Dirichlet rows at the
// boundary vertices eliminated, one shared center value with a flux-balance
// Kirchhoff row (one-sided derivative plus curvature correction, which keeps
// second order and, after diagonal mass scaling, symmetry). The default path
// extracts the lowest eigenvalues by Sturm inertia bisection on the
// tridiagonal-plus-border structure; the dense symmetric eigensolver is the
// slow cross-validation path.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "starsl/potential.hpp"

namespace starsl {

struct FdOracleOptions {
    bool dense = false;
    int neumann_edge = 0;  // 1-based edge with y'(0) = 0 instead of Dirichlet; 0 = none
};

// Cubic resampling of nodal values onto a different uniform grid.
inline Potential resample(const Potential& q, int M) {
    if (q.grid_M() == M) return q;
    const auto& s = q.samples();
    const int Mq = q.grid_M();
    std::vector<double> out(M + 1);
    for (int i = 0; i <= M; ++i) {
        const double t = double(i) * Mq / M;
        const int b = std::clamp(static_cast<int>(t) - 1, 0, Mq - 3);
        const double u = t - b;
        out[i] = -(u - 1) * (u - 2) * (u - 3) / 6.0 * s[b] + u * (u - 2) * (u - 3) / 2.0 * s[b + 1] -
                 u * (u - 1) * (u - 3) / 2.0 * s[b + 2] + u * (u - 1) * (u - 2) / 6.0 * s[b + 3];
    }
    return Potential(std::move(out));
}

namespace detail {

struct FdSystem {
    int m = 0;
    int M = 0;
    double h = 0.0;
    // per-edge node layout: interior x_1..x_{M-1}, plus x_0 when Neumann
    std::vector<std::vector<double>> diag;  // A diagonal per edge chain (center excluded)
    std::vector<std::vector<double>> mass;  // D diagonal per edge chain
    double center_diag = 0.0;
    double center_mass = 0.0;
    double off = 0.0;  // all couplings are -1/h^2

    int dimension() const {
        int d = 1;
        for (const auto& c : diag) d += static_cast<int>(c.size());
        return d;
    }
};

inline FdSystem assemble_system(const PotentialVector& v, int M, int neumann_edge) {
    if (M < 200) throw invalid_input_error("fd oracle: M >= 200 required");
    FdSystem sys;
    sys.m = v.edge_count();
    sys.M = M;
    sys.h = pi / M;
    const double ih2 = 1.0 / (sys.h * sys.h);
    sys.off = -ih2;
    double qc_sum = 0.0;
    for (int j = 0; j < sys.m; ++j) {
        const Potential q = resample(v.edges[j], M);
        const auto& s = q.samples();
        std::vector<double> d, ms;
        if (neumann_edge == j + 1) {
            d.push_back(ih2 + 0.5 * s[0]);
            ms.push_back(0.5);
        }
        for (int i = 1; i <= M - 1; ++i) {
            d.push_back(2.0 * ih2 + s[i]);
            ms.push_back(1.0);
        }
        qc_sum += s[M];
        sys.diag.push_back(std::move(d));
        sys.mass.push_back(std::move(ms));
    }
    sys.center_diag = sys.m * ih2 + 0.5 * qc_sum;
    sys.center_mass = 0.5 * sys.m;
    return sys;
}

// Number of eigenvalues of (A, D) strictly below sigma, by LDL^T pivots of
// A - sigma D taken chain by chain with the center Schur complement last.
inline int inertia_below(const FdSystem& sys, double sigma) {
    constexpr double pivmin = 1e-280;
    const double off2 = sys.off * sys.off;
    int neg = 0;
    double center = sys.center_diag - sigma * sys.center_mass;
    for (std::size_t j = 0; j < sys.diag.size(); ++j) {
        const auto& dg = sys.diag[j];
        const auto& ms = sys.mass[j];
        double d = 0.0;
        for (std::size_t i = 0; i < dg.size(); ++i) {
            d = dg[i] - sigma * ms[i] - (i == 0 ? 0.0 : off2 / d);
            if (std::abs(d) < pivmin) d = -pivmin;
            if (d < 0.0) ++neg;
        }
        center -= off2 / d;
    }
    if (center < 0.0) ++neg;
    return neg;
}

inline std::vector<double> eigen_bisect(const FdSystem& sys, int count) {
    // Gershgorin-style lower bound for the generalized pencil
    double lo = 0.0;
    bool first = true;
    auto track = [&](double a, double r, double m) {
        const double b = (a - r) / m;
        if (first || b < lo) lo = b;
        first = false;
    };
    for (std::size_t j = 0; j < sys.diag.size(); ++j)
        for (std::size_t i = 0; i < sys.diag[j].size(); ++i)
            track(sys.diag[j][i], 2.0 * std::abs(sys.off), sys.mass[j][i]);
    track(sys.center_diag, sys.m * std::abs(sys.off), sys.center_mass);
    lo -= 1.0;

    double hi = std::max(1.0, -lo);
    while (inertia_below(sys, hi) < count) hi *= 2.0;

    std::vector<double> out(count);
    for (int k = 1; k <= count; ++k) {
        double a = lo, b = hi;
        while (b - a > 1e-11 * std::max(1.0, std::abs(a) + std::abs(b))) {
            const double mid = 0.5 * (a + b);
            if (inertia_below(sys, mid) >= k)
                b = mid;
            else
                a = mid;
        }
        out[k - 1] = 0.5 * (a + b);
    }
    return out;
}

inline std::vector<double> eigen_dense(const FdSystem& sys, int count) {
    const int dim = sys.dimension();
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
    std::vector<double> mass(dim);
    int base = 0;
    const int center = dim - 1;
    for (std::size_t j = 0; j < sys.diag.size(); ++j) {
        const int n = static_cast<int>(sys.diag[j].size());
        for (int i = 0; i < n; ++i) {
            A(base + i, base + i) = sys.diag[j][i];
            mass[base + i] = sys.mass[j][i];
            if (i + 1 < n) A(base + i, base + i + 1) = A(base + i + 1, base + i) = sys.off;
        }
        A(base + n - 1, center) = A(center, base + n - 1) = sys.off;
        base += n;
    }
    A(center, center) = sys.center_diag;
    mass[center] = sys.center_mass;
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k)
            if (A(i, k) != 0.0) A(i, k) /= std::sqrt(mass[i] * mass[k]);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw oracle_error("fd oracle: dense eigensolver failed");
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

}  // namespace detail

// Lowest `count` eigenvalues of the discrete star-graph operator.
inline std::vector<double> oracle_eigenvalues(const PotentialVector& v, int M, int count,
                                              const FdOracleOptions& opt = {}) {
    if (count < 1) throw invalid_input_error("oracle_eigenvalues: count >= 1");
    if (opt.neumann_edge < 0 || opt.neumann_edge > v.edge_count())
        throw invalid_input_error("oracle_eigenvalues: bad neumann_edge");
    const auto sys = detail::assemble_system(v, M, opt.neumann_edge);
    if (count >= sys.dimension()) throw invalid_input_error("oracle_eigenvalues: count too large");
    return opt.dense ? detail::eigen_dense(sys, count) : detail::eigen_bisect(sys, count);
}

}  // namespace starsl

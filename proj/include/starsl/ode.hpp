// ode.hpp — fundamental solutions S(x, lambda), C(x, lambda) on one edge.
//
// Fixed-step fourth-order commutator-free Magnus integrator for
// -y'' + q y = lambda y written as u' = A(x) u. Each step composes two
// exact constant-coefficient transfer matrices built from the two
// Gauss-point samples of q, so the scheme is exact for constant q (and in
// particular at q == 0), preserves the Wronskian to rounding, and stays
// usable in the oscillatory regime up to the lambda_max guard.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "starsl/common.hpp"
#include "starsl/potential.hpp"

namespace starsl {

struct EdgeBasisValues {
    complex lambda;
    complex rho;  // principal sqrt, Re >= 0
    complex S_end, Sp_end, C_end, Cp_end;
    // Full traces on the grid nodes; empty unless requested.
    std::vector<complex> S, Sp, C, Cp;

    complex wronskian() const { return C_end * Sp_end - Cp_end * S_end; }
};

namespace detail {

// cosh(sqrt(z)) and sinh(sqrt(z))/sqrt(z) as entire functions of z.
inline double cosh_sqrt(double z) {
    if (std::abs(z) < 1e-2) {
        // 1 + z/2! + z^2/4! + ... ; next term ~ z^6/12! < 1e-21
        return 1.0 + z * (1.0 / 2 + z * (1.0 / 24 + z * (1.0 / 720 + z * (1.0 / 40320 + z / 3628800.0))));
    }
    return z > 0.0 ? std::cosh(std::sqrt(z)) : std::cos(std::sqrt(-z));
}

inline double sinhc_sqrt(double z) {
    if (std::abs(z) < 1e-2) {
        return 1.0 + z * (1.0 / 6 + z * (1.0 / 120 + z * (1.0 / 5040 + z * (1.0 / 362880 + z / 39916800.0))));
    }
    if (z > 0.0) {
        const double w = std::sqrt(z);
        return std::sinh(w) / w;
    }
    const double w = std::sqrt(-z);
    return std::sin(w) / w;
}

inline complex cosh_sqrt(complex z) {
    if (std::abs(z) < 1e-2) {
        return 1.0 + z * (1.0 / 2 + z * (1.0 / 24 + z * (1.0 / 720 + z * (1.0 / 40320 + z / 3628800.0))));
    }
    return std::cosh(std::sqrt(z));
}

inline complex sinhc_sqrt(complex z) {
    if (std::abs(z) < 1e-2) {
        return 1.0 + z * (1.0 / 6 + z * (1.0 / 120 + z * (1.0 / 5040 + z * (1.0 / 362880 + z / 39916800.0))));
    }
    const complex w = std::sqrt(z);
    return std::sinh(w) / w;
}

}  // namespace detail

class EdgeSolver {
  public:
    explicit EdgeSolver(const Potential& q, double lambda_max = default_lambda_max)
        : M_(q.grid_M()), h_(pi / M_) {
        lambda_max_ = std::min(lambda_max, std::max(sqr(M_ / 10.0), 16.0));

        // Gauss-Legendre nodes of the CF4 scheme and the cubic interpolation
        // of the nodal samples onto them.
        const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
        const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
        const double a1 = 0.25 + std::sqrt(3.0) / 6.0;
        const double a2 = 0.25 - std::sqrt(3.0) / 6.0;
        const auto& qs = q.samples();
        auto q_at = [&](double t) {
            // cubic Lagrange through 4 neighbouring nodes
            int b = std::clamp(static_cast<int>(t) - 1, 0, M_ - 3);
            const double s = t - b;
            const double l0 = -(s - 1) * (s - 2) * (s - 3) / 6.0;
            const double l1 = s * (s - 2) * (s - 3) / 2.0;
            const double l2 = -s * (s - 1) * (s - 3) / 2.0;
            const double l3 = s * (s - 1) * (s - 2) / 6.0;
            return l0 * qs[b] + l1 * qs[b + 1] + l2 * qs[b + 2] + l3 * qs[b + 3];
        };
        wa_.resize(M_);
        wb_.resize(M_);
        for (int i = 0; i < M_; ++i) {
            const double q1 = q_at(i + c1);
            const double q2 = q_at(i + c2);
            wa_[i] = h_ * (a1 * q1 + a2 * q2);
            wb_[i] = h_ * (a2 * q1 + a1 * q2);
        }
    }

    int grid_M() const { return M_; }
    double lambda_max() const { return lambda_max_; }

    EdgeBasisValues basis(complex lambda, bool want_trace = false) const {
        if (std::abs(lambda) > lambda_max_ * (1.0 + 1e-12))
            throw lambda_range_error("edge_basis: |lambda| exceeds the accuracy guard " +
                                     std::to_string(lambda_max_));
        EdgeBasisValues out;
        out.lambda = lambda;
        out.rho = sqrt_lambda(lambda);
        if (lambda.imag() == 0.0)
            propagate<double>(lambda.real(), want_trace, out);
        else
            propagate<complex>(lambda, want_trace, out);
        return out;
    }

  private:
    template <class T>
    void propagate(T lambda, bool want_trace, EdgeBasisValues& out) const {
        const double p = 0.5 * h_;
        T C = T(1), Cp = T(0), S = T(0), Sp = T(1);
        if (want_trace) {
            out.S.resize(M_ + 1);
            out.Sp.resize(M_ + 1);
            out.C.resize(M_ + 1);
            out.Cp.resize(M_ + 1);
            out.S[0] = S;
            out.Sp[0] = Sp;
            out.C[0] = C;
            out.Cp[0] = Cp;
        }
        const T half_lambda_h = T(0.5) * T(h_) * lambda;
        for (int i = 0; i < M_; ++i) {
            for (const T w : {T(wa_[i]) - half_lambda_h, T(wb_[i]) - half_lambda_h}) {
                const T z = T(p) * w;
                const T cz = detail::cosh_sqrt(z);
                const T sz = detail::sinhc_sqrt(z);
                const T psz = T(p) * sz;
                const T wsz = w * sz;
                T t0 = cz * C + psz * Cp;
                Cp = wsz * C + cz * Cp;
                C = t0;
                t0 = cz * S + psz * Sp;
                Sp = wsz * S + cz * Sp;
                S = t0;
            }
            if (want_trace) {
                out.S[i + 1] = S;
                out.Sp[i + 1] = Sp;
                out.C[i + 1] = C;
                out.Cp[i + 1] = Cp;
            }
        }
        out.S_end = S;
        out.Sp_end = Sp;
        out.C_end = C;
        out.Cp_end = Cp;
    }

    int M_;
    double h_;
    double lambda_max_;
    std::vector<double> wa_, wb_;  // lambda-independent parts of the two factors
};

inline EdgeBasisValues edge_basis(const Potential& q, complex lambda,
                                  double lambda_max = default_lambda_max,
                                  bool want_trace = false) {
    return EdgeSolver(q, lambda_max).basis(lambda, want_trace);
}

}  // namespace starsl

// char_fn.hpp — characteristic functions of the star-graph problem.
//
// Delta(lambda)   = sum_k S'_k(pi) prod_{j != k} S_j(pi)
// Delta_j(lambda) = C'_j prod_{n != j} S_n + C_j sum_{i != j} S'_i prod_{n != i,j} S_n
// (the derivative of the product expanded analytically), plus the entire
// scalings rho^{m-1} Delta(rho^2) and rho^{m-2} Delta_j(rho^2) used for
// root finding and the Paley-Wiener remainders.
#pragma once

#include <utility>
#include <vector>

#include "starsl/ode.hpp"

namespace starsl {

struct CharValues {
    complex lambda;
    complex rho;
    complex delta;
    std::vector<complex> delta_j;  // j = 1..m-1
};

class GraphSolver {
  public:
    explicit GraphSolver(const PotentialVector& v, double lambda_max = default_lambda_max) {
        if (v.edge_count() < 2) throw invalid_input_error("GraphSolver: m >= 2 required");
        edges_.reserve(v.edges.size());
        for (const auto& q : v.edges) edges_.emplace_back(q, lambda_max);
    }

    int edge_count() const { return static_cast<int>(edges_.size()); }
    double lambda_max() const { return edges_[0].lambda_max(); }
    const EdgeSolver& edge(int j) const { return edges_.at(j); }

    std::vector<EdgeBasisValues> all_bases(complex lambda, bool want_trace = false) const {
        std::vector<EdgeBasisValues> b;
        b.reserve(edges_.size());
        for (const auto& e : edges_) b.push_back(e.basis(lambda, want_trace));
        return b;
    }

    CharValues char_values(complex lambda) const {
        const auto b = all_bases(lambda);
        const int m = edge_count();
        CharValues cv;
        cv.lambda = lambda;
        cv.rho = b[0].rho;

        cv.delta = complex(0);
        for (int k = 0; k < m; ++k) {
            complex term = b[k].Sp_end;
            for (int j = 0; j < m; ++j)
                if (j != k) term *= b[j].S_end;
            cv.delta += term;
        }

        cv.delta_j.resize(m - 1);
        for (int j = 0; j < m - 1; ++j) {
            complex term = b[j].Cp_end;
            for (int n = 0; n < m; ++n)
                if (n != j) term *= b[n].S_end;
            for (int i = 0; i < m; ++i) {
                if (i == j) continue;
                complex t = b[j].C_end * b[i].Sp_end;
                for (int n = 0; n < m; ++n)
                    if (n != i && n != j) t *= b[n].S_end;
                term += t;
            }
            cv.delta_j[j] = term;
        }
        return cv;
    }

    complex delta(complex lambda) const { return char_values(lambda).delta; }

    // rho^{m-1} Delta(rho^2): entire in rho, real for real rho.
    complex scaled_delta(complex rho) const {
        const int m = edge_count();
        complex v = char_values(rho * rho).delta;
        for (int i = 0; i < m - 1; ++i) v *= rho;
        return v;
    }

    // rho^{m-2} Delta_j(rho^2), j in 1..m-1 (1-based).
    complex scaled_delta_j(int j, complex rho) const {
        const int m = edge_count();
        if (j < 1 || j > m - 1) throw invalid_input_error("scaled_delta_j: j out of range");
        complex v = char_values(rho * rho).delta_j[j - 1];
        for (int i = 0; i < m - 2; ++i) v *= rho;
        return v;
    }

  private:
    std::vector<EdgeSolver> edges_;
};

inline CharValues char_delta(const PotentialVector& v, complex lambda,
                             double lambda_max = default_lambda_max) {
    return GraphSolver(v, lambda_max).char_values(lambda);
}

// (rho^{m-1} Delta(rho^2), rho^{m-2} Delta_k(rho^2) for k = 1..m-1) at real rho.
inline std::pair<double, std::vector<double>> scaled_char(const PotentialVector& v, double rho,
                                                          double lambda_max = default_lambda_max) {
    GraphSolver g(v, lambda_max);
    const int m = g.edge_count();
    const CharValues cv = g.char_values(complex(rho * rho));
    double d = cv.delta.real();
    for (int i = 0; i < m - 1; ++i) d *= rho;
    std::vector<double> dj(m - 1);
    for (int j = 0; j < m - 1; ++j) {
        double t = cv.delta_j[j].real();
        for (int i = 0; i < m - 2; ++i) t *= rho;
        dj[j] = t;
    }
    return {d, dj};
}

}  // namespace starsl

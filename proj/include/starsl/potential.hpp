// potential.hpp — star-graph configuration, edge potentials, and the P_Q ball.
//
// Potentials live as samples on the uniform grid; norms and means are
// composite-trapezoid quadratures. All edge lengths are pi.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "starsl/common.hpp"
#include "starsl/grid.hpp"
#include "starsl/rng.hpp"

namespace starsl {

struct StarGraphConfig {
    int edge_count;   // m
    int grid_points;  // M subintervals per edge

    StarGraphConfig(int m, int M) : edge_count(m), grid_points(M) {
        if (m < 2)
            throw invalid_input_error(
                "StarGraphConfig: m >= 2 required (the auxiliary spectra need at "
                "least one other edge; m = 1 is unsupported)");
        if (M < 16) throw invalid_input_error("StarGraphConfig: M >= 16 required");
    }

    Grid grid() const { return Grid(grid_points); }
};

class Potential {
  public:
    explicit Potential(std::vector<double> samples) : samples_(std::move(samples)) {
        if (samples_.size() < 17)
            throw invalid_input_error("Potential: need at least 17 samples (M >= 16)");
        for (double v : samples_)
            if (!std::isfinite(v))
                throw invalid_input_error("Potential: non-finite sample");
        norm_ = l2_norm_grid(samples_);
    }

    static Potential zero(int M) { return Potential(std::vector<double>(M + 1, 0.0)); }

    const std::vector<double>& samples() const { return samples_; }
    double l2_norm() const { return norm_; }
    int grid_M() const { return static_cast<int>(samples_.size()) - 1; }
    double mean() const { return trapezoid(samples_) / pi; }

  private:
    std::vector<double> samples_;
    double norm_;
};

struct PotentialVector {
    std::vector<Potential> edges;
    std::optional<double> ball_radius;

    int edge_count() const { return static_cast<int>(edges.size()); }
    int grid_M() const { return edges.at(0).grid_M(); }

    double total_norm() const {
        double s = 0.0;
        for (const auto& q : edges) s += q.l2_norm();
        return s;
    }
};

// Projects out the quadrature mean; returns the adjusted potential and the
// removed constant (which shifts every eigenvalue by the same amount).
inline std::pair<Potential, double> normalize_mean_zero(const Potential& p) {
    const double shift = p.mean();
    std::vector<double> s = p.samples();
    for (double& v : s) v -= shift;
    return {Potential(std::move(s)), shift};
}

inline PotentialVector normalize_mean_zero(const PotentialVector& v) {
    PotentialVector out;
    out.ball_radius = v.ball_radius;
    out.edges.reserve(v.edges.size());
    for (const auto& q : v.edges) out.edges.push_back(normalize_mean_zero(q).first);
    return out;
}

struct BallMembership {
    bool inside;
    double margin;  // Q - sum of edge norms
};

inline BallMembership ball_membership(const PotentialVector& v, double Q) {
    if (!(Q > 0.0)) throw invalid_input_error("ball_membership: Q must be positive");
    const double total = v.total_norm();
    return {total <= Q, Q - total};
}

// Random potential vector in P_Q: per edge a truncated cosine series
// sum_{l=1..L} c_l cos(l x) (automatically mean-zero on the grid), all edges
// rescaled so the total norm is uniform in [0, Q]. Deterministic in the seed.
inline PotentialVector random_in_ball(const StarGraphConfig& config, double Q,
                                      std::uint64_t seed, int modes = 6) {
    if (!(Q > 0.0)) throw invalid_input_error("random_in_ball: Q must be positive");
    if (modes < 1) throw invalid_input_error("random_in_ball: modes >= 1");

    Xoshiro256StarStar rng(seed);
    const Grid g = config.grid();
    const int m = config.edge_count;

    std::vector<std::vector<double>> coeff(m, std::vector<double>(modes));
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < modes; ++l)
            coeff[j][l] = rng.normal() / (1.0 + l);
    const double target_total = rng.uniform() * Q;

    PotentialVector v;
    v.ball_radius = Q;
    std::vector<double> samples(g.nodes());
    double raw_total = 0.0;
    std::vector<Potential> raw;
    raw.reserve(m);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < g.nodes(); ++i) {
            double s = 0.0;
            for (int l = 0; l < modes; ++l) s += coeff[j][l] * std::cos((l + 1) * g.x(i));
            samples[i] = s;
        }
        raw.emplace_back(samples);
        raw_total += raw.back().l2_norm();
    }
    const double scale = raw_total > 0.0 ? target_total / raw_total : 0.0;
    for (int j = 0; j < m; ++j) {
        std::vector<double> s = raw[j].samples();
        for (double& x : s) x *= scale;
        v.edges.emplace_back(std::move(s));
    }
    return v;
}

}  // namespace starsl

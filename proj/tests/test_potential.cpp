#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "starsl/potential.hpp"

using namespace starsl;
using Catch::Approx;

namespace {

Potential from_function(int M, double (*f)(double)) {
    Grid g(M);
    std::vector<double> s(g.nodes());
    for (int i = 0; i < g.nodes(); ++i) s[i] = f(g.x(i));
    return Potential(std::move(s));
}

}  // namespace

TEST_CASE("normalize_mean_zero on the zero potential") {
    auto [q, shift] = normalize_mean_zero(Potential::zero(64));
    REQUIRE(shift == 0.0);
    for (double v : q.samples()) REQUIRE(v == 0.0);
}

TEST_CASE("normalize_mean_zero removes a constant") {
    auto [q, shift] = normalize_mean_zero(from_function(64, [](double) { return 1.0; }));
    REQUIRE(shift == Approx(1.0).margin(1e-14));
    REQUIRE(q.l2_norm() == Approx(0.0).margin(1e-13));
}

TEST_CASE("normalize_mean_zero on sin x") {
    const int M = 2000;
    auto [q, shift] = normalize_mean_zero(from_function(M, [](double x) { return std::sin(x); }));
    REQUIRE(shift == Approx(2.0 / pi).margin(1e-6));
    // quadrature mean of the result is zero
    REQUIRE(std::abs(trapezoid(q.samples())) <= 1e-10 * (1.0 + q.l2_norm()));
    // original = returned + shift pointwise
    Grid g(M);
    for (int i = 0; i <= M; i += 97)
        REQUIRE(q.samples()[i] + shift == Approx(std::sin(g.x(i))).margin(1e-14));
}

TEST_CASE("normalize_mean_zero is idempotent") {
    auto v = random_in_ball(StarGraphConfig(3, 256), 1.0, 7);
    for (const auto& q : v.edges) {
        auto [q1, s1] = normalize_mean_zero(q);
        auto [q2, s2] = normalize_mean_zero(q1);
        REQUIRE(std::abs(s2) < 1e-12);
        for (size_t i = 0; i < q1.samples().size(); ++i)
            REQUIRE(q2.samples()[i] == Approx(q1.samples()[i]).margin(1e-12));
    }
}

TEST_CASE("non-finite samples are rejected") {
    std::vector<double> s(65, 0.0);
    s[10] = std::nan("");
    REQUIRE_THROWS_AS(Potential(std::move(s)), invalid_input_error);
}

TEST_CASE("quadrature norm: cos x hits sqrt(pi/2), smooth functions converge at M^-2") {
    // trapezoid is exact for cos^2 on this grid
    const double exact = std::sqrt(pi / 2.0);
    REQUIRE(from_function(200, [](double x) { return std::cos(x); }).l2_norm() ==
            Approx(exact).epsilon(1e-14));

    auto f = [](double x) { return std::exp(x / pi); };
    const double ref = std::sqrt(pi / 2.0 * (std::exp(2.0) - 1.0));
    const double e1 = std::abs(from_function(100, f).l2_norm() - ref);
    const double e2 = std::abs(from_function(200, f).l2_norm() - ref);
    REQUIRE(e2 < e1 / 3.0);  // O(M^-2)
}

TEST_CASE("ball_membership arithmetic") {
    SECTION("zero potentials are inside") {
        PotentialVector v{{Potential::zero(64), Potential::zero(64), Potential::zero(64)}, {}};
        auto r = ball_membership(v, 1.0);
        REQUIRE(r.inside);
        REQUIRE(r.margin == Approx(1.0));
    }
    SECTION("two edges of norm 0.6 exceed Q = 1") {
        // scale cos x so each edge has norm 0.6
        auto base = from_function(400, [](double x) { return std::cos(x); });
        std::vector<double> s = base.samples();
        for (double& x : s) x *= 0.6 / base.l2_norm();
        Potential q(s);
        PotentialVector v{{q, q}, {}};
        auto r = ball_membership(v, 1.0);
        REQUIRE_FALSE(r.inside);
        REQUIRE(r.margin == Approx(-0.2).margin(1e-12));
    }
    SECTION("explicit scaling to 0.999 Q") {
        auto v = random_in_ball(StarGraphConfig(3, 256), 1.0, 3);
        const double total = v.total_norm();
        for (auto& q : v.edges) {
            std::vector<double> s = q.samples();
            for (double& x : s) x *= 0.999 / total;
            q = Potential(std::move(s));
        }
        auto r = ball_membership(v, 1.0);
        REQUIRE(r.inside);
        REQUIRE(r.margin == Approx(0.001).margin(1e-9));
    }
    SECTION("Q <= 0 rejected") {
        PotentialVector v{{Potential::zero(64), Potential::zero(64)}, {}};
        REQUIRE_THROWS_AS(ball_membership(v, 0.0), invalid_input_error);
    }
}

TEST_CASE("random_in_ball determinism and membership") {
    StarGraphConfig cfg(3, 128);
    SECTION("same seed, same samples, bitwise") {
        auto a = random_in_ball(cfg, 1.0, 42);
        auto b = random_in_ball(cfg, 1.0, 42);
        for (int j = 0; j < 3; ++j)
            for (size_t i = 0; i < a.edges[j].samples().size(); ++i)
                REQUIRE(a.edges[j].samples()[i] == b.edges[j].samples()[i]);
        auto c = random_in_ball(cfg, 1.0, 43);
        REQUIRE(c.edges[0].samples() != a.edges[0].samples());
    }
    SECTION("Q -> 0 limit") {
        auto v = random_in_ball(cfg, 1e-8, 5);
        for (const auto& q : v.edges) REQUIRE(q.l2_norm() <= 1e-8);
    }
    SECTION("ensemble of 100 draws stays in the ball and mean-zero") {
        for (int s = 0; s < 100; ++s) {
            auto v = random_in_ball(cfg, 2.0, 1000 + s);
            REQUIRE(ball_membership(v, 2.0).inside);
            for (const auto& q : v.edges)
                REQUIRE(std::abs(trapezoid(q.samples())) <= 1e-10 * (1.0 + q.l2_norm()));
        }
    }
    SECTION("invalid Q") {
        REQUIRE_THROWS_AS(random_in_ball(cfg, -1.0, 1), invalid_input_error);
    }
}

TEST_CASE("StarGraphConfig rejects m = 1") {
    REQUIRE_THROWS_AS(StarGraphConfig(1, 64), invalid_input_error);
    REQUIRE_THROWS_AS(StarGraphConfig(3, 8), invalid_input_error);
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "starsl/ode.hpp"
#include "starsl/rng.hpp"

using namespace starsl;
using Catch::Approx;

namespace {

Potential sampled(int M, double (*f)(double)) {
    Grid g(M);
    std::vector<double> s(g.nodes());
    for (int i = 0; i < g.nodes(); ++i) s[i] = f(g.x(i));
    return Potential(std::move(s));
}

}  // namespace

TEST_CASE("zero potential closed forms") {
    EdgeSolver solver(Potential::zero(200));
    SECTION("lambda = 0.25 (rho = 1/2)") {
        auto b = solver.basis(complex(0.25));
        REQUIRE(b.S_end.real() == Approx(2.0).margin(1e-12));
        REQUIRE(b.Sp_end.real() == Approx(0.0).margin(1e-12));
        REQUIRE(b.C_end.real() == Approx(0.0).margin(1e-12));
        REQUIRE(b.Cp_end.real() == Approx(-0.5).margin(1e-12));
    }
    SECTION("lambda = -1 (hyperbolic)") {
        auto b = solver.basis(complex(-1.0));
        REQUIRE(b.S_end.real() == Approx(std::sinh(pi)).epsilon(1e-12));
        REQUIRE(b.C_end.real() == Approx(std::cosh(pi)).epsilon(1e-12));
    }
    SECTION("lambda = 0 (linear solution)") {
        auto b = solver.basis(complex(0.0));
        REQUIRE(b.S_end.real() == Approx(pi).epsilon(1e-13));
        REQUIRE(b.Sp_end.real() == Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("constant-shift identity: q == c matches q == 0 at lambda - c") {
    EdgeSolver zero(Potential::zero(128));
    EdgeSolver one(sampled(128, [](double) { return 1.0; }));
    auto a = one.basis(complex(1.25));
    auto b = zero.basis(complex(0.25));
    REQUIRE(a.S_end.real() == Approx(b.S_end.real()).margin(1e-13));
    REQUIRE(a.Cp_end.real() == Approx(b.Cp_end.real()).margin(1e-13));

    Xoshiro256StarStar rng(11);
    for (int t = 0; t < 20; ++t) {
        const double c = 4.0 * rng.uniform() - 2.0;
        const complex lambda(8.0 * rng.uniform() - 4.0, 2.0 * rng.uniform() - 1.0);
        std::vector<double> s(129, c);
        EdgeSolver shifted{Potential(std::move(s))};
        auto u = shifted.basis(lambda + c);
        auto v = zero.basis(lambda);
        REQUIRE(std::abs(u.S_end - v.S_end) < 1e-8 * (1.0 + std::abs(v.S_end)));
        REQUIRE(std::abs(u.Sp_end - v.Sp_end) < 1e-8 * (1.0 + std::abs(v.Sp_end)));
    }
}

TEST_CASE("Wronskian constancy for random potentials and lambdas") {
    Xoshiro256StarStar rng(23);
    for (int t = 0; t < 100; ++t) {
        auto v = random_in_ball(StarGraphConfig(2, 160), 1.5, 500 + t);
        EdgeSolver solver(v.edges[0]);
        const complex lambda(30.0 * rng.uniform() - 10.0, 4.0 * rng.uniform() - 2.0);
        auto b = solver.basis(lambda);
        const double scale =
            std::max(1.0, std::abs(b.C_end * b.Sp_end) + std::abs(b.Cp_end * b.S_end));
        REQUIRE(std::abs(b.wronskian() - 1.0) < 1e-8 * scale);
    }
}

TEST_CASE("real lambda and real q give real outputs") {
    auto v = random_in_ball(StarGraphConfig(2, 200), 1.0, 77);
    EdgeSolver solver(v.edges[0]);
    for (double lambda : {-3.0, -0.5, 0.7, 4.0, 30.0}) {
        auto b = solver.basis(complex(lambda));
        REQUIRE(b.S_end.imag() == 0.0);
        REQUIRE(b.Cp_end.imag() == 0.0);
    }
}

TEST_CASE("grid convergence is at least fourth order-ish") {
    // halving the step must reduce the error by a factor >= 3.5; the CF4
    // scheme gives ~16 in practice
    auto ref = sampled(3200, [](double x) { return std::cos(2 * x) + 0.3 * std::sin(3 * x); });
    const complex lambda(7.0);
    const complex exact = EdgeSolver(ref).basis(lambda).S_end;
    double prev = 0.0;
    for (int M : {100, 200, 400}) {
        auto q = sampled(M, [](double x) { return std::cos(2 * x) + 0.3 * std::sin(3 * x); });
        const double err = std::abs(EdgeSolver(q).basis(lambda).S_end - exact);
        if (prev > 0.0) REQUIRE(err < prev / 3.5);
        prev = err;
    }
}

TEST_CASE("Richardson self-consistency for q = cos 2x at lambda = 4") {
    auto q1 = sampled(400, [](double x) { return std::cos(2 * x); });
    auto q2 = sampled(1600, [](double x) { return std::cos(2 * x); });
    auto a = EdgeSolver(q1).basis(complex(4.0));
    auto b = EdgeSolver(q2).basis(complex(4.0));
    REQUIRE(std::abs(a.S_end - b.S_end) < 1e-8);
    REQUIRE(std::abs(a.Sp_end - b.Sp_end) < 1e-8);
}

TEST_CASE("lambda out of range raises") {
    EdgeSolver solver(Potential::zero(100));
    REQUIRE_THROWS_AS(solver.basis(complex(2e4)), lambda_range_error);
}

TEST_CASE("traces end at the endpoint values") {
    auto v = random_in_ball(StarGraphConfig(2, 150), 1.0, 9);
    EdgeSolver solver(v.edges[0]);
    auto b = solver.basis(complex(2.5, 0.3), true);
    REQUIRE(b.S.size() == 151);
    REQUIRE(b.S.back() == b.S_end);
    REQUIRE(b.Sp.front() == complex(1.0));
    REQUIRE(b.C.front() == complex(1.0));
}

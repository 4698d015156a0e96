#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "percolab/limit.hpp"

using namespace percolab;

TEST_CASE("a_alpha against the Gamma closed form") {
    for (double tau : {2.2, 2.5, 2.8}) {
        CAPTURE(tau);
        CHECK(std::abs(a_alpha(tau) - std::tgamma(3 - tau) / (tau - 2)) < 1e-8);
    }
    CHECK(a_alpha(2.5) == doctest::Approx(2 * std::sqrt(M_PI)).epsilon(1e-12));
    // Growth towards 3: both values sit on the closed form and increase.
    const double a1 = a_alpha(2.95), a2 = a_alpha(2.99);
    CHECK(a2 > a1);
    CHECK(a1 == doctest::Approx(std::tgamma(0.05) / 0.95).epsilon(1e-8));
    CHECK(a2 == doctest::Approx(std::tgamma(0.01) / 0.99).epsilon(1e-8));
    for (double tau = 2.05; tau < 3; tau += 0.1) CHECK(a_alpha(tau) > 0);
    CHECK_THROWS_AS(a_alpha(2.0), std::invalid_argument);
    CHECK_THROWS_AS(a_alpha(3.0), std::invalid_argument);
}

TEST_CASE("lambda_c") {
    CHECK(lambda_c(2.5, 1.0, 1.0) == doctest::Approx(0.5 * std::sqrt(0.5 / (2 * std::sqrt(M_PI)))).epsilon(1e-12));
    for (double tau : {2.2, 2.5, 2.8}) {
        for (double mu : {0.5, 1.0, 3.0}) {
            CHECK(lambda_c(tau, 1.3, 2 * mu) / lambda_c(tau, 1.3, mu) ==
                  doctest::Approx(std::pow(2.0, (tau - 1) / 2)).epsilon(1e-12));
            CHECK(lambda_c(tau, 1.3, mu) > 0);
        }
    }
    CHECK(lambda_c(2.5, 1.0, 3.0) == doctest::Approx(0.428049).epsilon(1e-6));
    CHECK_THROWS_AS(lambda_c(2.5, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(lambda_c(3.5, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("lambda_uv") {
    TinyGiantParams p{.lambda = 0.9, .tau = 2.5, .c_f = 1.0, .mu = 3.0};
    SUBCASE("symmetric and decreasing in each index") {
        for (std::size_t u = 1; u <= 6; ++u) {
            for (std::size_t v = 1; v <= 6; ++v) {
                CHECK(lambda_uv(p, u, v) == doctest::Approx(lambda_uv(p, v, u)).epsilon(1e-12));
                CHECK(lambda_uv(p, u, v + 1) < lambda_uv(p, u, v));
                CHECK(lambda_uv(p, u + 1, v) < lambda_uv(p, u, v));
            }
        }
    }
    SUBCASE("agrees with a million-panel midpoint rule") {
        for (double tau : {2.3, 2.5, 2.8}) {
            p.tau = tau;
            for (auto [u, v] : {std::pair<std::size_t, std::size_t>{1, 1}, {2, 7}, {10, 40}}) {
                CAPTURE(tau);
                CAPTURE(u);
                CAPTURE(v);
                CHECK(std::abs(lambda_uv(p, u, v) - lambda_uv_midpoint(p, u, v, 1000000)) < 1e-6);
            }
        }
    }
    SUBCASE("scales with lambda squared") {
        const double base = lambda_uv(p, 2, 3);
        p.lambda *= 2;
        CHECK(lambda_uv(p, 2, 3) == doctest::Approx(4 * base).epsilon(1e-12));
        p.lambda = 0;
        CHECK(lambda_uv(p, 2, 3) == 0.0);
    }
    CHECK_THROWS_AS(lambda_uv(p, 0, 1), std::invalid_argument);
}

TEST_CASE("tiny giant graph") {
    Rng rng(21);
    TinyGiantParams p{.lambda = 0.0, .tau = 2.5, .c_f = 1.0, .mu = 3.0};
    CHECK(tiny_giant_graph(p, 20, rng).edges().size() == 0);
    p.lambda = 2.0;
    CHECK(tiny_giant_graph(p, 1, rng).edges().size() == 0);
    // Multiplicity of the pair (1, 2) is Poisson(lambda_12).
    const double rate = lambda_uv(p, 1, 2);
    const int reps = 4000;
    double sum = 0;
    for (int r = 0; r < reps; ++r) {
        const auto g = tiny_giant_graph(p, 3, rng);
        for (const auto& e : g.edges()) sum += (std::min(e.u, e.v) == 0 && std::max(e.u, e.v) == 1);
    }
    CHECK(std::abs(sum / reps - rate) < 3 * std::sqrt(rate / reps));
    CHECK_THROWS_AS(tiny_giant_graph(p, 0, rng), std::invalid_argument);
}

TEST_CASE("rho fixed point") {
    TinyGiantParams p{.lambda = 0.0, .tau = 2.5, .c_f = 1.0, .mu = 3.0};
    const double lc = lambda_c(p.tau, p.c_f, p.mu);

    SUBCASE("lambda = 0") {
        const auto s = rho_fixed_point(4.0, p, 64);
        for (double r : s.rho) CHECK(r == 0.0);
        CHECK(s.zeta == 0.0);
    }
    SUBCASE("values in [0,1], nonincreasing in u, log-spaced grid") {
        p.lambda = 4 * lc;
        const auto s = rho_fixed_point(8.0, p, 256);
        REQUIRE(s.u.size() == 256);
        CHECK(s.u.back() == doctest::Approx(8.0));
        CHECK(s.u.front() == doctest::Approx(1e-6));
        for (std::size_t i = 0; i < s.rho.size(); ++i) {
            CHECK(s.rho[i] >= 0.0);
            CHECK(s.rho[i] <= 1.0);
            if (i > 0) CHECK(s.rho[i] <= s.rho[i - 1] + 1e-15);
        }
        CHECK(s.rho.front() > 0.9);
    }
    SUBCASE("iteration from one decreases pointwise") {
        // Stopping earlier leaves every value above the converged one.
        p.lambda = 3 * lc;
        const auto early = rho_fixed_point(8.0, p, 128, 1e-2);
        const auto late = rho_fixed_point(8.0, p, 128, 1e-12);
        CHECK(early.iterations < late.iterations);
        for (std::size_t i = 0; i < early.rho.size(); ++i) CHECK(early.rho[i] >= late.rho[i] - 1e-15);
    }
    SUBCASE("grid refinement") {
        // The trapezoid error is second order in the log step; the iteration
        // tolerance is set at the accuracy the 512-point grid actually reaches.
        const double tol = 1e-5;
        p.lambda = 4 * lc;
        for (double a : {1.0, 8.0}) {
            const double z256 = rho_fixed_point(a, p, 256, 1e-12).zeta;
            const double z512 = rho_fixed_point(a, p, 512, 1e-12).zeta;
            const double z1024 = rho_fixed_point(a, p, 1024, 1e-12).zeta;
            CAPTURE(a);
            CHECK(std::abs(z1024 - z512) < 10 * tol * z512);
            CHECK((z512 - z256) / (z1024 - z512) == doctest::Approx(4.0).epsilon(0.1));
        }
    }
    CHECK_THROWS_AS(rho_fixed_point(0.0, p, 64), std::invalid_argument);
    CHECK_THROWS_AS(rho_fixed_point(1.0, p, 1), std::invalid_argument);
    p.lambda = 4 * lc;
    CHECK_THROWS_AS(rho_fixed_point(8.0, p, 64, 1e-12, 3), std::runtime_error);
}

TEST_CASE("zeta") {
    TinyGiantParams p{.lambda = 0.0, .tau = 2.5, .c_f = 1.0, .mu = 3.0};
    const double lc = lambda_c(p.tau, p.c_f, p.mu);
    CHECK(zeta(4.0, p, 128) == 0.0);
    p.lambda = 1e-3;
    CHECK(zeta(4.0, p, 128) < 1e-8);

    for (double f : {2.0, 4.0}) {
        p.lambda = f * lc;
        double prev = 0;
        for (double a : {1.0, 2.0, 4.0, 8.0}) {
            const double z = zeta(a, p, 256);
            CAPTURE(f);
            CAPTURE(a);
            CHECK(z >= prev - 1e-9);
            prev = z;
        }
    }

    p.lambda = 2 * lc;
    const auto lim = zeta_limit(p, 1e-4);
    CHECK(lim.converged);
    CHECK(lim.zeta > 0.1);
    CHECK(std::isfinite(lim.zeta));
    CHECK(lim.zeta >= zeta(8.0, p, 256));
}

// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numbers>

#include "cam/numerics.hpp"

using namespace cam;

TEST_CASE("polynomial evaluation and derivative")
{
    // p(z) = 1 + 2z + 3z^2
    Poly p{Complex(1, 0), Complex(2, 0), Complex(3, 0)};
    CHECK(poly_eval(p, Complex(2, 0)) == Complex(17, 0));
    const Poly d = poly_derivative(p);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == Complex(2, 0));
    CHECK(d[1] == Complex(6, 0));
    CHECK(poly_degree(p) == 2);
}

TEST_CASE("roots of a constructed cubic come back accurately")
{
    const Complex r1(1.5, 0.25), r2(-2.0, 1.0), r3(4.0, -3.0);
    // (z - r1)(z - r2)(z - r3) expanded
    Poly p{-r1 * r2 * r3, r1 * r2 + r1 * r3 + r2 * r3, -(r1 + r2 + r3), Complex(1, 0)};
    auto roots = poly_roots(p);
    REQUIRE(roots.size() == 3);
    for (const Complex& want : {r1, r2, r3}) {
        double best = 1e9;
        for (const Complex& got : roots)
            best = std::min(best, std::abs(got - want));
        CHECK(best < 1e-10);
    }
}

TEST_CASE("newton polish tightens companion roots on a wide-spread polynomial")
{
    const Complex r1(30.0, 0.5), r2(0.3, -0.1), r3(-12.0, 2.0), r4(8.0, 8.0);
    Poly p{Complex(1, 0)};
    for (const Complex& r : {r1, r2, r3, r4}) {
        Poly q(p.size() + 1, Complex{});
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i + 1] += p[i];
            q[i] -= r * p[i];
        }
        p = q;
    }
    for (const Complex& want : {r1, r2, r3, r4}) {
        auto roots = poly_roots(p);
        double best = 1e9;
        Complex best_root;
        for (const Complex& got : roots) {
            if (std::abs(got - want) < best) {
                best = std::abs(got - want);
                best_root = got;
            }
        }
        const PolishResult pr = newton_polish(p, best_root);
        CHECK(pr.converged);
        CHECK(std::abs(pr.root - want) < 1e-10 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("adaptive quadrature: smooth integrands")
{
    const double third = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(third == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // Narrow Lorentzian against the arctan closed form.
    const double g = 1e-3;
    const double got = integrate_adaptive(
        [g](double x) { return g / (x * x + g * g); }, -1.0, 2.0, 1e-10);
    const double want = std::atan(1.0 / g) + std::atan(2.0 / g);
    CHECK(got == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("adaptive quadrature: a jump defeats the refinement limit and reports the estimate")
{
    const auto step = [](double x) { return x < std::numbers::inv_pi ? 0.0 : 1.0; };
    bool threw = false;
    try {
        integrate_adaptive(step, 0.0, 1.0, 1e-14, 8);
    } catch (const QuadratureError& e) {
        threw = true;
        CHECK(e.last_estimate == doctest::Approx(1.0 - std::numbers::inv_pi).epsilon(1e-2));
    }
    CHECK(threw);
}

TEST_CASE("pchip reproduces linear data and preserves monotonicity")
{
    Pchip lin({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 5.0, 7.0});
    CHECK(lin(1.5) == doctest::Approx(4.0).epsilon(1e-14));

    Pchip mono({0.0, 1.0, 2.0, 3.0, 4.0}, {0.0, 0.1, 0.5, 2.0, 2.1});
    double prev = mono(0.0);
    for (double x = 0.05; x <= 4.0; x += 0.05) {
        const double y = mono(x);
        CHECK(y >= prev - 1e-12);
        prev = y;
    }
}

TEST_CASE("moving average window 5")
{
    const double v[] = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0};
    const auto out = moving_average(v, 5);
    CHECK(out[0] == doctest::Approx(1.0));  // window shrinks to a point
    CHECK(out[1] == doctest::Approx(2.0));  // +-1 reach
    CHECK(out[3] == doctest::Approx(4.0));  // full +-2 reach
    CHECK(out[6] == doctest::Approx(7.0));
}

TEST_CASE("parallel_for covers every index exactly once")
{
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i].fetch_add(1); });
    for (auto& h : hits)
        CHECK(h.load() == 1);
}

TEST_CASE("fnv1a is stable")
{
    CHECK(fnv1a("") == 14695981039346656037ull);
    CHECK(fnv1a("a") == fnv1a("a"));
    CHECK(fnv1a("a") != fnv1a("b"));
}

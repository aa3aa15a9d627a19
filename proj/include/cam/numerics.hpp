// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "cam/common.hpp"

namespace cam {

// Complex polynomials stored as ascending coefficient vectors: c[0] + c[1] z + ...
using Poly = std::vector<Complex>;

Complex poly_eval(std::span<const Complex> coeffs, Complex z);
Poly poly_derivative(std::span<const Complex> coeffs);

// Degree after dropping exact-zero (and denormal) leading coefficients.
int poly_degree(std::span<const Complex> coeffs);

// All roots via a balanced companion matrix. Degree 0 (or empty) gives {}.
std::vector<Complex> poly_roots(std::span<const Complex> coeffs);

struct PolishResult {
    Complex root;
    bool converged = false;
};

// Newton refinement of a root estimate; convergence means the residual
// |p(z)| drops below rtol times the sum of term magnitudes.
PolishResult newton_polish(std::span<const Complex> coeffs, Complex start,
                           int max_iter = 50, double rtol = 1e-12);

// Adaptive Gauss-Legendre integration (15-point panels, recursive bisection).
// Panel error budgets are proportional to panel width so the summed relative
// error stays below rel_tol. A panel still unconverged at max_depth raises
// QuadratureError carrying the assembled estimate.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-8, int max_depth = 20);

double lerp(double x0, double y0, double x1, double y1, double x);
Complex lerp(double x0, Complex y0, double x1, Complex y1, double x);

// Centered moving average; the window shrinks symmetrically near the ends.
std::vector<double> moving_average(std::span<const double> v, int window);

// Fritsch-Carlson monotone piecewise cubic interpolant.
class Pchip {
public:
    Pchip(std::vector<double> x, std::vector<double> y);
    double operator()(double x) const;

private:
    std::vector<double> x_, y_, slope_;
};

std::uint64_t fnv1a(std::string_view s);

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Callers own output
// placement by index, so results are order-independent.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace cam

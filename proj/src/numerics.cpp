// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#include "cam/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace cam {

Complex poly_eval(std::span<const Complex> coeffs, Complex z)
{
    Complex acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = acc * z + coeffs[i];
    return acc;
}

Poly poly_derivative(std::span<const Complex> coeffs)
{
    Poly d;
    if (coeffs.size() <= 1)
        return d;
    d.resize(coeffs.size() - 1);
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        d[i - 1] = coeffs[i] * static_cast<double>(i);
    return d;
}

int poly_degree(std::span<const Complex> coeffs)
{
    // Only hard zeros / denormal dust are dropped; the coefficient spread of a
    // legitimate high-degree polynomial can be enormous and must survive.
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && std::abs(coeffs[static_cast<std::size_t>(deg)]) < 1e-300)
        --deg;
    return deg;
}

namespace {

// Parlett-Reinsch balancing with power-of-two scale factors.
void balance_in_place(Eigen::MatrixXcd& m)
{
    const int n = static_cast<int>(m.rows());
    bool converged = false;
    while (!converged) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i)
                    continue;
                c += std::abs(m(j, i));
                r += std::abs(m(i, j));
            }
            if (c == 0.0 || r == 0.0)
                continue;
            double f = 1.0;
            const double s = c + r;
            while (c < r / 2.0) {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (c >= r * 2.0) {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if ((c + r) < 0.95 * s && f != 1.0) {
                converged = false;
                m.col(i) *= f;
                m.row(i) /= f;
            }
        }
    }
}

}  // namespace

std::vector<Complex> poly_roots(std::span<const Complex> coeffs)
{
    const int deg = poly_degree(coeffs);
    std::vector<Complex> roots;
    if (deg < 1)
        return roots;

    // Strip exact-zero constant terms first: roots at the origin.
    std::size_t low = 0;
    while (low < static_cast<std::size_t>(deg) && std::abs(coeffs[low]) == 0.0) {
        roots.push_back(Complex(0.0, 0.0));
        ++low;
    }
    const int n = deg - static_cast<int>(low);
    if (n < 1)
        return roots;

    const Complex lead = coeffs[static_cast<std::size_t>(deg)];
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        comp(i, n - 1) = -coeffs[low + static_cast<std::size_t>(i)] / lead;
    for (int i = 1; i < n; ++i)
        comp(i, i - 1) = 1.0;
    balance_in_place(comp);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericalError("companion-matrix eigensolve failed");
    for (int i = 0; i < n; ++i)
        roots.push_back(solver.eigenvalues()(i));
    // Deterministic order regardless of eigensolver internals.
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real())
            return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

PolishResult newton_polish(std::span<const Complex> coeffs, Complex start, int max_iter,
                           double rtol)
{
    const Poly deriv = poly_derivative(coeffs);
    auto term_scale = [&](Complex z) {
        double s = 0.0, p = 1.0;
        const double az = std::abs(z);
        for (const Complex& c : coeffs) {
            s += std::abs(c) * p;
            p *= az;
        }
        return s;
    };

    Complex z = start;
    for (int it = 0; it < max_iter; ++it) {
        const Complex pz = poly_eval(coeffs, z);
        if (std::abs(pz) <= rtol * term_scale(z))
            return {z, true};
        const Complex dz = poly_eval(deriv, z);
        if (std::abs(dz) == 0.0 || !std::isfinite(std::abs(dz)))
            return {z, false};
        const Complex step = pz / dz;
        if (!std::isfinite(std::abs(step)))
            return {z, false};
        z -= step;
    }
    return {z, std::abs(poly_eval(coeffs, z)) <= rtol * term_scale(z)};
}

namespace {

struct GLRule {
    std::array<double, 15> node;
    std::array<double, 15> weight;
};

// 15-point Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on P_15.
const GLRule& gl15()
{
    static const GLRule rule = [] {
        GLRule r{};
        constexpr int n = 15;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16)
                    break;
            }
            r.node[static_cast<std::size_t>(i)] = x;
            r.weight[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return r;
    }();
    return rule;
}

double gl_panel(const std::function<double(double)>& f, double a, double b)
{
    const GLRule& r = gl15();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < r.node.size(); ++i)
        acc += r.weight[i] * f(mid + half * r.node[i]);
    return acc * half;
}

struct AdaptState {
    const std::function<double(double)>* f = nullptr;
    double scale = 0.0;
    double inv_width = 0.0;
    double rel_tol = 0.0;
    int max_depth = 0;
    bool failed = false;
};

double adapt(AdaptState& st, double a, double b, double whole, int depth)
{
    const double mid = 0.5 * (a + b);
    const double left = gl_panel(*st.f, a, mid);
    const double right = gl_panel(*st.f, mid, b);
    const double refined = left + right;
    const double budget = st.rel_tol * st.scale * (b - a) * st.inv_width;
    if (std::abs(refined - whole) <= budget || (b - a) <= 1e-14 * (1.0 + std::abs(a)))
        return refined;
    if (depth >= st.max_depth) {
        st.failed = true;
        return refined;
    }
    return adapt(st, a, mid, left, depth + 1) + adapt(st, mid, b, right, depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int max_depth)
{
    if (!(b > a))
        return 0.0;
    const double rough = gl_panel(f, a, b);
    AdaptState st;
    st.f = &f;
    st.scale = std::max(std::abs(rough), 1e-300);
    st.inv_width = 1.0 / (b - a);
    st.rel_tol = rel_tol;
    st.max_depth = max_depth;
    const double total = adapt(st, a, b, rough, 0);
    if (st.failed)
        throw QuadratureError("quadrature did not converge within the refinement limit", total);
    return total;
}

double lerp(double x0, double y0, double x1, double y1, double x)
{
    if (x1 == x0)
        return y0;
    const double t = (x - x0) / (x1 - x0);
    return y0 + t * (y1 - y0);
}

Complex lerp(double x0, Complex y0, double x1, Complex y1, double x)
{
    if (x1 == x0)
        return y0;
    const double t = (x - x0) / (x1 - x0);
    return y0 + t * (y1 - y0);
}

std::vector<double> moving_average(std::span<const double> v, int window)
{
    const int n = static_cast<int>(v.size());
    const int half = std::max(window, 1) / 2;
    std::vector<double> out(v.size());
    for (int i = 0; i < n; ++i) {
        // Symmetric shrink near the ends keeps the filter unbiased.
        const int reach = std::min({half, i, n - 1 - i});
        double acc = 0.0;
        for (int k = i - reach; k <= i + reach; ++k)
            acc += v[static_cast<std::size_t>(k)];
        out[static_cast<std::size_t>(i)] = acc / (2.0 * reach + 1.0);
    }
    return out;
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y))
{
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw ValidationError("pchip needs at least two (x, y) pairs");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw ValidationError("pchip abscissae must be strictly increasing");

    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    slope_.assign(n, 0.0);
    if (n == 2) {
        slope_[0] = slope_[1] = delta[0];
        return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0)
            s = 0.0;
        else if (d0 * d1 <= 0.0 && std::abs(s) > 3.0 * std::abs(d0))
            s = 3.0 * d0;
        return s;
    };
    slope_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    slope_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

double Pchip::operator()(double x) const
{
    const std::size_t n = x_.size();
    std::size_t i = 0;
    if (x <= x_.front())
        i = 0;
    else if (x >= x_[n - 2])
        i = n - 2;
    else
        i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn)
{
    const int threads = std::max(1, jobs);
    if (threads == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n + static_cast<std::size_t>(threads) - 1) / static_cast<std::size_t>(threads);
    for (int t = 0; t < threads; ++t) {
        const std::size_t lo = static_cast<std::size_t>(t) * chunk;
        if (lo >= n)
            break;
        const std::size_t hi = std::min(n, lo + chunk);
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i)
                fn(i);
        });
    }
    for (auto& th : pool)
        th.join();
}

}  // namespace cam

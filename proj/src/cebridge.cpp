// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#include "cam/cebridge.hpp"

#include <algorithm>
#include <cmath>

#include "cam/numerics.hpp"

namespace cam {

LinearCEMap fit_linear_ce(const Trajectory& ce, int j_lo, int j_hi)
{
    if (ce.axis != Axis::Energy)
        throw ValidationError("CE fit expects an energy-axis trajectory");
    std::vector<double> lam;
    std::vector<Complex> e_pole;
    for (const TrajectoryEntry& entry : ce.entries) {
        const double j = entry.ordinal;
        if (j < j_lo - 0.5 || j > j_hi + 0.5)
            continue;
        lam.push_back(j * (j + 1.0));
        e_pole.push_back(entry.position);
    }
    if (lam.size() < 3)
        throw ValidationError("CE fit window holds fewer than 3 entries");

    // Real design matrix [Lambda, 1] shared by the two complex components;
    // centering Lambda keeps the normal equations well conditioned.
    double mean = 0.0;
    for (double l : lam)
        mean += l;
    mean /= static_cast<double>(lam.size());
    double sxx = 0.0;
    Complex sxy = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < lam.size(); ++i) {
        const double dx = lam[i] - mean;
        sxx += dx * dx;
        sxy += dx * e_pole[i];
        sy += e_pole[i];
    }
    if (!(sxx > 0.0))
        throw ValidationError("CE fit is rank deficient: all Lambda values equal");

    LinearCEMap map;
    map.a = sxy / sxx;
    map.b = sy / static_cast<double>(lam.size()) - map.a * mean;
    map.j_window_min = j_lo;
    map.j_window_max = j_hi;
    map.lambda_min = *std::min_element(lam.begin(), lam.end());
    map.lambda_max = *std::max_element(lam.begin(), lam.end());
    double ss = 0.0;
    for (std::size_t i = 0; i < lam.size(); ++i)
        ss += std::norm(e_pole[i] - (map.a * lam[i] + map.b));
    map.fit_residual = std::sqrt(ss / static_cast<double>(lam.size()));
    return map;
}

Complex ce_to_regge(const LinearCEMap& map, double e_mev)
{
    if (!(std::norm(map.a) > 0.0))
        throw ValidationError("CE map is not invertible (A = 0)");
    const Complex lambda_sq_arg = (Complex(e_mev, 0.0) - map.b) / map.a + 0.25;
    if (std::abs(lambda_sq_arg.imag()) <= 1e-14 * std::max(1.0, std::abs(lambda_sq_arg)) &&
        lambda_sq_arg.real() < 0.0)
        throw NumericalError("branch cut: Lambda + 1/4 on the negative real axis");
    Complex s = std::sqrt(lambda_sq_arg);
    // First-quadrant physical branch: Im J >= 0 first, then Re J >= -1/2.
    if (s.imag() < 0.0)
        s = -s;
    else if (s.imag() == 0.0 && s.real() < 0.0)
        s = -s;
    return -0.5 + s;
}

Complex regge_to_ce(const LinearCEMap& map, double j)
{
    if (j < 0.0)
        throw ValidationError("regge_to_ce expects a real J >= 0");
    return map.a * (j * (j + 1.0)) + map.b;
}

double JShiftingParams::j1_at(double e_mev, bool large_j) const
{
    const double lambda1 = 2.0 * i_moment * (e_mev - e0);
    if (lambda1 < 0.0)
        throw ValidationError("energy below the binding energy in j1_at");
    if (large_j)
        return std::sqrt(lambda1);
    return -0.5 + std::sqrt(lambda1 + 0.25);
}

JShiftingParams j_shifting_params(const LinearCEMap& map, double a2_tol)
{
    const double a1 = map.a.real(), a2 = map.a.imag();
    const double b2 = map.b.imag();
    if (!(std::abs(a2) <= a2_tol * std::abs(a1)))
        throw ValidationError("imaginary part of the slope too large for the J-shifting limit");
    if (!(a1 > 0.0))
        throw ValidationError("unphysical moment of inertia");
    if (!(b2 < 0.0))
        throw ValidationError("growing state: Im B >= 0");
    JShiftingParams p;
    p.i_moment = 1.0 / (2.0 * a1);
    p.e0 = map.b.real();
    p.tau = -1.0 / b2;
    return p;
}

nlohmann::json map_to_json(const LinearCEMap& map, const std::optional<JShiftingParams>& js)
{
    nlohmann::json j;
    j["format"] = "cam-regge-cemap";
    j["format_version"] = 1;
    j["a"] = {{"re", map.a.real()}, {"im", map.a.imag()}, {"unit", "meV per unit Lambda"}};
    j["b"] = {{"re", map.b.real()}, {"im", map.b.imag()}, {"unit", "meV"}};
    j["fit_window"] = {{"j_min", map.j_window_min},
                       {"j_max", map.j_window_max},
                       {"lambda_min", map.lambda_min},
                       {"lambda_max", map.lambda_max}};
    j["fit_residual_mev"] = map.fit_residual;
    if (js) {
        j["j_shifting"] = {{"moment_of_inertia", {{"value", js->i_moment}, {"unit", "1/meV"}}},
                           {"binding_energy", {{"value", js->e0}, {"unit", "meV"}}},
                           {"lifetime", {{"value", js->tau}, {"unit", "hbar/meV"}}}};
    } else {
        j["j_shifting"] = nullptr;
    }
    return j;
}

LinearCEMap map_from_json(const nlohmann::json& j)
{
    if (j.value("format", "") != "cam-regge-cemap")
        throw ValidationError("not a cam-regge CE map document");
    LinearCEMap map;
    map.a = Complex(j.at("a").at("re"), j.at("a").at("im"));
    map.b = Complex(j.at("b").at("re"), j.at("b").at("im"));
    map.j_window_min = j.at("fit_window").at("j_min");
    map.j_window_max = j.at("fit_window").at("j_max");
    map.lambda_min = j.at("fit_window").at("lambda_min");
    map.lambda_max = j.at("fit_window").at("lambda_max");
    map.fit_residual = j.at("fit_residual_mev");
    return map;
}

}  // namespace cam

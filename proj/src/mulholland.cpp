// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#include "cam/mulholland.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cam/numerics.hpp"
#include "cam/textio.hpp"

namespace cam {

double resonance_term(Complex lambda, Complex residue, Complex s_conj, double k2)
{
    if (!(lambda.imag() > 0.0))
        throw ValidationError("resonance term needs Im lambda > 0");
    if (!(k2 > 0.0))
        throw ValidationError("resonance term needs k^2 > 0");
    const Complex denom = 1.0 + std::exp(Complex(0.0, -2.0 * std::numbers::pi) * lambda);
    if (std::abs(denom) < 1e-14)
        throw NumericalError("pole exactly at half-integer real lambda with zero width");
    const Complex numer = lambda * residue * s_conj;
    constexpr double eight_pi_sq = 8.0 * std::numbers::pi * std::numbers::pi;
    return eight_pi_sq / k2 * (numer / denom).imag();
}

double background_integral(const RationalApproximant& ra, int j_min, double k2, double rel_tol,
                           int max_depth)
{
    if (!(k2 > 0.0))
        throw ValidationError("background integral needs k^2 > 0");
    if (ra.axis != Axis::AngularMomentum)
        throw ValidationError("background integral expects an angular-momentum approximant");
    const double lambda_lo = j_min + 0.5;
    const double lambda_hi = ra.window.max + 0.5;  // |S|^2 treated as zero beyond
    if (!(lambda_hi > lambda_lo))
        throw ValidationError("empty background integration window");
    const auto integrand = [&ra](double lambda) {
        return std::norm(evaluate(ra, Complex(lambda, 0.0))) * lambda;
    };
    const double integral = integrate_adaptive(integrand, lambda_lo, lambda_hi, rel_tol, max_depth);
    return 2.0 * std::numbers::pi / k2 * integral;
}

namespace {

const TrajectoryEntry* entry_at(const Trajectory& traj, double e)
{
    auto it = std::lower_bound(traj.entries.begin(), traj.entries.end(), e,
                               [](const TrajectoryEntry& a, double b) { return a.ordinal < b; });
    const double tol = 1e-9 * (1.0 + std::abs(e));
    if (it != traj.entries.end() && std::abs(it->ordinal - e) <= tol)
        return &*it;
    if (it != traj.entries.begin() && std::abs(std::prev(it)->ordinal - e) <= tol)
        return &*std::prev(it);
    return nullptr;
}

}  // namespace

DecompositionResult decompose(const SMatrixTable& table, std::span<const Trajectory> trajectories,
                              std::span<const RationalApproximant> per_energy_ra,
                              double quad_rel_tol, int jobs)
{
    if (per_energy_ra.size() != table.n_energies())
        throw ValidationError("need one angular-momentum approximant per grid energy");
    for (const Trajectory& t : trajectories)
        if (t.axis != Axis::AngularMomentum)
            throw ValidationError("decompose expects Regge (angular-momentum) trajectories");

    DecompositionResult result;
    for (const Trajectory& t : trajectories)
        result.labels.push_back(t.label);
    result.rows.resize(table.n_energies());

    parallel_for(table.n_energies(), jobs, [&](std::size_t ei) {
        const double e = table.energies[ei];
        DecompositionRow row;
        row.e_mev = e;
        row.sigma_res.assign(trajectories.size(), 0.0);
        try {
            row.sigma_exact = pws_ics(table, e);
            const double k2 = wavevector_squared(table.kinematics, e);
            const RationalApproximant& ra = per_energy_ra[ei];
            if (ra.cf_coeffs.empty())
                throw NumericalError("no approximant at this energy");
            row.sigma_back = background_integral(ra, table.j_min, k2, quad_rel_tol);
            for (std::size_t ti = 0; ti < trajectories.size(); ++ti) {
                const TrajectoryEntry* entry = entry_at(trajectories[ti], e);
                if (!entry)
                    continue;  // outside the trajectory or inside a gap
                Complex s_conj = entry->s_conj;
                if (s_conj == Complex(0.0, 0.0))
                    s_conj = conjugate_evaluate(ra, entry->position);
                row.sigma_res[ti] = resonance_term(entry->position, entry->residue, s_conj, k2);
            }
            double res_sum = 0.0;
            for (double s : row.sigma_res)
                res_sum += s;
            row.residual = row.sigma_exact - row.sigma_back - res_sum;
        } catch (const std::exception& ex) {
            row.incomplete = true;
            row.note = ex.what();
            row.sigma_exact = std::numeric_limits<double>::quiet_NaN();
            row.sigma_back = std::numeric_limits<double>::quiet_NaN();
            row.residual = std::numeric_limits<double>::quiet_NaN();
            std::fill(row.sigma_res.begin(), row.sigma_res.end(),
                      std::numeric_limits<double>::quiet_NaN());
        }
        result.rows[ei] = std::move(row);
    });
    return result;
}

std::vector<FanoFeature> find_integer_crossings(const Trajectory& traj)
{
    if (traj.entries.size() < 2)
        throw ValidationError("integer-crossing search needs at least 2 entries");
    const std::size_t n = traj.entries.size();

    // d(Re lambda)/dE on the grid: central differences, one-sided at the ends.
    std::vector<double> deriv(n);
    auto re_at = [&](std::size_t i) { return traj.entries[i].position.real(); };
    auto e_at = [&](std::size_t i) { return traj.entries[i].ordinal; };
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0)
            deriv[i] = (re_at(1) - re_at(0)) / (e_at(1) - e_at(0));
        else if (i + 1 == n)
            deriv[i] = (re_at(n - 1) - re_at(n - 2)) / (e_at(n - 1) - e_at(n - 2));
        else
            deriv[i] = (re_at(i + 1) - re_at(i - 1)) / (e_at(i + 1) - e_at(i - 1));
    }

    std::vector<FanoFeature> features;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double r0 = re_at(i) - 0.5;  // Re J
        const double r1 = re_at(i + 1) - 0.5;
        if (r0 == r1)
            continue;
        const double lo = std::min(r0, r1), hi = std::max(r0, r1);
        for (int k = static_cast<int>(std::ceil(lo)); k <= static_cast<int>(std::floor(hi)); ++k) {
            const double t = (k - r0) / (r1 - r0);
            if (t < 0.0 || t > 1.0)
                continue;
            const double e0 = e_at(i), e1 = e_at(i + 1);
            const double ek = e0 + t * (e1 - e0);
            if (!features.empty() && features.back().k == k &&
                std::abs(features.back().e_k - ek) <= 1e-9 * (1.0 + std::abs(ek)))
                continue;  // shared endpoint of adjacent segments
            FanoFeature f;
            f.label = traj.label;
            f.k = k;
            f.e_k = ek;
            const Complex lam = lerp(e0, traj.entries[i].position, e1,
                                     traj.entries[i + 1].position, ek);
            const Complex rho = lerp(e0, traj.entries[i].residue, e1,
                                     traj.entries[i + 1].residue, ek);
            const Complex s_conj = lerp(e0, traj.entries[i].s_conj, e1,
                                        traj.entries[i + 1].s_conj, ek);
            const double d = lerp(e0, deriv[i], e1, deriv[i + 1], ek);
            if (!(d > 0.0)) {
                f.non_monotone = true;
                f.gamma_width = std::numeric_limits<double>::quiet_NaN();
                f.strength = Complex(0.0, 0.0);
            } else {
                f.gamma_width = 2.0 * lam.imag() / d;
                f.strength = lam * rho * s_conj / d;
            }
            features.push_back(f);
        }
    }
    std::sort(features.begin(), features.end(),
              [](const FanoFeature& a, const FanoFeature& b) { return a.e_k < b.e_k; });
    return features;
}

double fano_approx(std::span<const FanoFeature> features, double k2, double e_mev)
{
    if (features.empty())
        throw ValidationError("fano approximation needs at least one feature");
    if (!(k2 > 0.0))
        throw ValidationError("fano approximation needs k^2 > 0");
    Complex acc = 0.0;
    for (const FanoFeature& f : features) {
        if (f.non_monotone || !std::isfinite(f.gamma_width))
            continue;
        acc += f.strength / Complex(e_mev - f.e_k, f.gamma_width / 2.0);
    }
    return -2.0 * std::numbers::pi / k2 * acc.real();
}

double oscillation_approx(Complex lambda, Complex residue, Complex s_conj, double k2)
{
    if (!(lambda.imag() > 0.0))
        throw ValidationError("oscillation approximation needs Im lambda > 0");
    if (!(k2 > 0.0))
        throw ValidationError("oscillation approximation needs k^2 > 0");
    const Complex prod = lambda * residue * s_conj;
    constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
    const double phase = 2.0 * std::numbers::pi * lambda.real() + std::arg(prod);
    return four_pi_sq / k2 * std::abs(prod) * std::exp(-2.0 * std::numbers::pi * lambda.imag()) *
           std::sin(phase);
}

void write_decomposition_csv(const DecompositionResult& result, std::ostream& out)
{
    out << "# lambda_convention=J+1/2; background lower limit lambda=J_min+1/2\n";
    out << "E_meV,sigma_exact,sigma_back_int";
    for (const std::string& label : result.labels)
        out << ",sigma_res_" << label;
    out << ",residual_I\n";
    for (const DecompositionRow& row : result.rows) {
        out << format_double(row.e_mev) << "," << format_double(row.sigma_exact) << ","
            << format_double(row.sigma_back);
        for (double s : row.sigma_res)
            out << "," << format_double(s);
        out << "," << format_double(row.residual) << "\n";
    }
}

void write_fano_csv(std::span<const FanoFeature> features, std::ostream& out)
{
    out << "label,K,E_K_meV,Gamma_K_meV,re_gamma,im_gamma\n";
    for (const FanoFeature& f : features) {
        out << f.label << "," << f.k << "," << format_double(f.e_k) << ","
            << format_double(f.gamma_width) << "," << format_double(f.strength.real()) << ","
            << format_double(f.strength.imag()) << "\n";
    }
}

}  // namespace cam

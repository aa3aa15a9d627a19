// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "cam/smatrix.hpp"
#include "cam/trajectory.hpp"

namespace cam {

// Resonance contribution of one Regge pole [A^2]:
//   sigma_res = (8 pi^2 / k^2) Im[ lambda rho S*(E, lambda*) / (1 + exp(-2 i pi lambda)) ].
// Requires Im lambda > 0 and k^2 > 0; may be negative.
double resonance_term(Complex lambda, Complex residue, Complex s_conj, double k2);

// Smooth background [A^2]:
//   (2 pi / k^2) int |S(E,lambda)|^2 lambda dlambda
// from lambda = j_min + 1/2 to the last sampled lambda + 1/2.
double background_integral(const RationalApproximant& ra, int j_min, double k2,
                           double rel_tol = 1e-8, int max_depth = 20);

struct DecompositionRow {
    double e_mev = 0.0;
    double sigma_exact = 0.0;
    double sigma_back = 0.0;
    std::vector<double> sigma_res;  // aligned with DecompositionResult::labels
    double residual = 0.0;          // sigma_exact - sigma_back - sum(sigma_res)
    bool incomplete = false;
    std::string note;
};

struct DecompositionResult {
    std::vector<std::string> labels;
    std::vector<DecompositionRow> rows;
};

// Per-energy split of the ICS into background integral, per-trajectory
// resonance terms (zero inside gaps) and the subtraction residual. A failing
// constituent marks that energy incomplete instead of aborting.
DecompositionResult decompose(const SMatrixTable& table,
                              std::span<const Trajectory> trajectories,
                              std::span<const RationalApproximant> per_energy_ra,
                              double quad_rel_tol = 1e-8, int jobs = 1);

// A sharp ICS feature where Re J crosses the integer K.
struct FanoFeature {
    std::string label;
    int k = 0;
    double e_k = 0.0;          // crossing energy [meV]
    double gamma_width = 0.0;  // Gamma_K [meV]; NaN when flagged non-monotone
    Complex strength;          // gamma_K = lambda rho S* / d_E Re lambda at E_K
    bool non_monotone = false; // d_E Re lambda <= 0 at the crossing
};

// Linear-interpolation crossing finder; derivatives by central differences
// (one-sided at the ends), trajectory quantities interpolated to E_K.
std::vector<FanoFeature> find_integer_crossings(const Trajectory& traj);

// Fano lineshape sum
//   sigma ~ (-2 pi / k^2) Re sum_K strength_K / (E - E_K + i Gamma_K / 2),
// skipping features without a reported width.
double fano_approx(std::span<const FanoFeature> features, double k2, double e_mev);

// Sinusoidal Regge-oscillation form
//   sigma ~ (4 pi^2 / k^2) |lambda rho S*| exp(-2 pi Im lambda)
//           * sin(2 pi Re lambda + Arg(lambda rho S*)).
double oscillation_approx(Complex lambda, Complex residue, Complex s_conj, double k2);

// CSV: E_meV, sigma_exact, sigma_back_int, sigma_res_<label>..., residual_I
void write_decomposition_csv(const DecompositionResult& result, std::ostream& out);
// CSV: label, K, E_K_meV, Gamma_K_meV, re_gamma, im_gamma
void write_fano_csv(std::span<const FanoFeature> features, std::ostream& out);

}  // namespace cam

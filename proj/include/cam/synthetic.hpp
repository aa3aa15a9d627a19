// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cam/smatrix.hpp"
#include "cam/trajectory.hpp"

namespace cam {

// Complex polynomial in (E - e_ref).
struct EnergyPoly {
    std::vector<Complex> coeffs;
    double e_ref = 0.0;

    Complex operator()(double e) const;
    bool empty() const { return coeffs.empty(); }
};

// Parametrized pole path lambda_n(E).
struct PolePath {
    enum class Kind { SqrtShift, Linear, Table };
    Kind kind = Kind::Linear;

    // SqrtShift: lambda(E) = -1/2 + sqrt(2 I (E - e0 + i/tau) + 1/4)
    double inertia = 0.0;
    double e0 = 0.0;
    double tau = 0.0;

    // Linear: lambda(E) = lambda_ref + slope * (E - e_ref)
    Complex lambda_ref;
    Complex slope;
    double e_ref = 0.0;

    // Table: per-energy positions (linearly interpolated off-node)
    std::vector<double> table_e;
    std::vector<Complex> table_lambda;

    Complex lambda_at(double e) const;
};

struct PoleSpec {
    PolePath path;
    EnergyPoly residue;
};

// Additive pole-plus-polynomial S-matrix model with analytically known
// structure: S(E, lambda) = background(E, lambda) + sum_n rho_n(E)/(lambda - lambda_n(E)).
struct PoleModelSpec {
    TransitionLabel transition;
    std::vector<double> energy_grid;  // meV, strictly increasing
    int j_min = 0;
    int j_max = 0;
    Kinematics kinematics;
    std::optional<double> threshold_mev;
    std::vector<EnergyPoly> background;  // index = power of lambda, degree <= 4
    std::vector<PoleSpec> poles;

    void validate() const;
};

// Closed-form S(E, lambda).
Complex model_value(const PoleModelSpec& spec, double e, Complex lambda);

// Samples the closed form at lambda = J + 1/2 on the grid. Errors when a pole
// comes within 1e-3 of a sampled node. Unitarity warnings are suppressed.
SMatrixTable generate_table(const PoleModelSpec& spec);

// The model's analytic pole positions/residues at energy E.
std::vector<ComplexPole> exact_poles(const PoleModelSpec& spec, double e);

// conj(S(E, conj(lambda))) from the closed form.
Complex exact_s_conj(const PoleModelSpec& spec, double e, Complex lambda);

// Exact Regge trajectory of pole `pole_index` over the grid, with closed-form
// residues and S*(E, lambda*) values. Oracle input for tracking-free tests.
Trajectory exact_trajectory(const PoleModelSpec& spec, std::size_t pole_index,
                            const std::string& label = "X");

// Partial wave sum evaluated directly from the closed form; an independent
// code path from pws_ics (descending-J, extended-precision accumulation).
double exact_ics(const PoleModelSpec& spec, double e);

nlohmann::json spec_to_json(const PoleModelSpec& spec);
PoleModelSpec spec_from_json(const nlohmann::json& j);
PoleModelSpec load_model_spec_file(const std::string& path);

}  // namespace cam

// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include <json.hpp>

#include "cam/trajectory.hpp"

namespace cam {

// Local linear map E(Lambda) = A*Lambda + B between the complex energy plane
// and Lambda = J(J+1), fitted over a window of a CE trajectory.
struct LinearCEMap {
    Complex a;  // meV per unit Lambda
    Complex b;  // meV
    int j_window_min = 0;
    int j_window_max = 0;
    double lambda_min = 0.0;  // fit window in Lambda
    double lambda_max = 0.0;
    double fit_residual = 0.0;  // RMS |E_fit - E_data| over the window
};

// Least-squares fit over entries with j_lo <= J <= j_hi.
LinearCEMap fit_linear_ce(const Trajectory& ce, int j_lo, int j_hi);

// Complex J at a real energy: Lambda = (E - B)/A, then
// J = -1/2 + sqrt(Lambda + 1/4) on the first-quadrant branch.
// Lambda + 1/4 on the negative real axis raises the branch-cut error.
Complex ce_to_regge(const LinearCEMap& map, double e_mev);

// Complex pole energy at a real J: E = A*J(J+1) + B.
Complex regge_to_ce(const LinearCEMap& map, double j);

// Rigid-rotor parameters of the J-shifting approximation:
//   E1 = J^2/2I + E0,  E2 = -1/tau.
struct JShiftingParams {
    double i_moment = 0.0;  // moment of inertia [1/meV]
    double e0 = 0.0;        // binding energy [meV]
    double tau = 0.0;       // lifetime [hbar/meV]

    double omega_at(double j1) const { return j1 / i_moment; }
    double life_angle_at(double j1) const { return omega_at(j1) * tau; }
    // J1 selected by energy conservation; exact inversion of Lambda1 = J(J+1)
    // by default, or the large-J shortcut J1 = sqrt(Lambda1).
    double j1_at(double e_mev, bool large_j = false) const;
};

// Requires |Im A| <= a2_tol |Re A| (near-real slope), Re A > 0, Im B < 0.
JShiftingParams j_shifting_params(const LinearCEMap& map, double a2_tol = 0.1);

nlohmann::json map_to_json(const LinearCEMap& map, const std::optional<JShiftingParams>& js);
LinearCEMap map_from_json(const nlohmann::json& j);

}  // namespace cam

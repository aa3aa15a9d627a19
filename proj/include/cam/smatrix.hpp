// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cam/common.hpp"

namespace cam {

// One state-to-state transition: nu = (v, j, Omega) -> nu' = (v', j', Omega').
struct TransitionLabel {
    int v = 0, j = 0, omega = 0;
    int v_p = 0, j_p = 0, omega_p = 0;

    // The partial wave sum starts at max(Omega, Omega').
    int j_min() const { return omega > omega_p ? omega : omega_p; }
    void validate() const;
    std::string str() const;
};

enum class KinematicsMode { ReducedMass, ExplicitWavevector };

struct Kinematics {
    KinematicsMode mode = KinematicsMode::ReducedMass;
    double mu_amu = 0.0;            // reduced mass [u], ReducedMass mode
    std::vector<double> e_grid;     // ExplicitWavevector: grid energies [meV]
    std::vector<double> k_values;   // ExplicitWavevector: k per grid energy [1/A]

    void validate(std::size_t n_energies) const;
};

// k^2 [1/A^2] at collision energy E [meV]. Explicit mode requires E to be a
// grid energy; reduced-mass mode uses k^2 = mu*E/C with the frozen constant.
double wavevector_squared(const Kinematics& kin, double e_mev);

// Complex S(E, J) for one transition on an (energy, J) grid.
// Storage is canonical: energy-major, J-minor, ascending both ways.
struct SMatrixTable {
    TransitionLabel transition;
    std::vector<double> energies;   // meV, strictly increasing
    int j_min = 0;
    int j_max = -1;
    std::vector<Complex> values;
    Kinematics kinematics;
    std::optional<double> threshold_mev;
    bool suppress_unitarity_warnings = false;
    std::vector<std::string> warnings;

    int n_j() const { return j_max - j_min + 1; }
    std::size_t n_energies() const { return energies.size(); }
    const Complex& at(std::size_t ei, int j) const {
        return values[ei * static_cast<std::size_t>(n_j()) + static_cast<std::size_t>(j - j_min)];
    }
    Complex& at(std::size_t ei, int j) {
        return values[ei * static_cast<std::size_t>(n_j()) + static_cast<std::size_t>(j - j_min)];
    }
    // Index of a grid energy; throws ValidationError for off-grid values.
    std::size_t energy_index(double e_mev) const;

    // Checks invariants; records (or suppresses) unitarity warnings.
    void validate(double unitarity_slack = 1e-3);
};

// |S|^2 with the [0, 1+slack] range check.
double reaction_probability(Complex s, double slack = 1e-3);

// Integral cross section [A^2] at a grid energy by the partial wave sum
//   sigma = (2 pi / k^2) sum_{J=Jmin}^{Jmax} (J + 1/2) |S(E,J)|^2
// with fixed ascending-J summation order.
double pws_ics(const SMatrixTable& table, double e_mev);

// CSV schema (see README): header comments declare transition/kinematics,
// data columns are E_meV, J, Re_S, Im_S[, k_invA].
SMatrixTable load_smatrix_table(std::istream& in, const std::string& source_name = "<stream>",
                                double unitarity_slack = 1e-3);
SMatrixTable load_smatrix_table_file(const std::string& path, double unitarity_slack = 1e-3);
void write_smatrix_csv(const SMatrixTable& table, std::ostream& out);

// Canonical JSON dump for downstream tooling.
nlohmann::json table_to_json(const SMatrixTable& table);
SMatrixTable table_from_json(const nlohmann::json& j);

}  // namespace cam

// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "cam/numerics.hpp"

namespace cam {

// Axis along which a rational interpolant continues S: the complex angular
// momentum plane (lambda = J + 1/2) at fixed E, or the complex energy plane
// at fixed integer J.
enum class Axis { AngularMomentum, Energy };

const char* axis_name(Axis a);
Axis axis_from_name(const std::string& s);

struct Window {
    double min = 0.0;
    double max = 0.0;
};

struct Sample {
    double x = 0.0;
    Complex f;
};

struct PadeOptions {
    // Early-termination tolerance: stop adding continued-fraction levels once
    // every remaining node is already reproduced this well (relative).
    double trunc_rel_tol = 1e-12;
    // Final interpolation acceptance (relative). Failing every pivot order
    // raises the "degenerate data" error.
    double interp_rel_tol = 1e-10;
};

// Thiele-form continued fraction through the samples,
//   R(z) = b0 + (z - x0)/(b1 + (z - x1)/(b2 + ...)),
// with numerator/denominator polynomials from the three-term recurrence.
// For M active nodes the degrees split as ceil((M-1)/2) / floor((M-1)/2).
struct RationalApproximant {
    Axis axis = Axis::AngularMomentum;
    double fixed_value = 0.0;
    std::vector<double> nodes;    // pivot order; the first cf_order() are active
    std::vector<Complex> values;  // samples aligned with nodes
    std::vector<Complex> cf_coeffs;
    Poly num_poly;
    Poly den_poly;
    Window window;
    std::vector<Complex> den_roots;  // cached roots (unpolished companion output)
    std::vector<Complex> num_roots;

    std::size_t cf_order() const { return cf_coeffs.size(); }
};

RationalApproximant build_rational(std::vector<Sample> samples, const PadeOptions& opts = {},
                                   Axis axis = Axis::AngularMomentum, double fixed_value = 0.0);

// Continued-fraction evaluation (the numerically stable path). Throws when z
// sits within 1e-12 of a denominator root.
Complex evaluate(const RationalApproximant& ra, Complex z);

// Direct num/den Horner ratio; cross-check path for evaluate().
Complex evaluate_poly_ratio(const RationalApproximant& ra, Complex z);

// conj(R(conj z)): the S*(E, lambda*) quantity of the resonance term when
// called at z = lambda_pole.
Complex conjugate_evaluate(const RationalApproximant& ra, Complex z);

struct PoleQuality {
    double pole_zero_dist = std::numeric_limits<double>::infinity();
    double stability = -1.0;  // leave-one-out match fraction; -1 = not evaluated
    bool unpolished = false;  // Newton did not converge in 50 iterations
    bool multiple = false;    // clustered denominator root; residue not defined
    std::string flag_string() const;
};

struct ComplexPole {
    Complex position;  // lambda on the J axis, complex E [meV] on the energy axis
    Complex residue;
    PoleQuality quality;
};

// Denominator roots (companion matrix + Newton polish) with residues
// num(z0)/den'(z0) for simple roots.
std::vector<ComplexPole> extract_poles(const RationalApproximant& ra);

enum class HalfPlane { Upper, Lower };

struct FilterPolicy {
    double eps_froissart = 1e-3;      // min pole-zero distance
    double residue_floor = 1e-8;      // min |residue|
    double match_radius = 0.1;        // leave-one-out match radius
    double stability_fraction = 0.8;  // min fraction of matching refits
    double im_max = 3.0;              // max |Im position|
    HalfPlane half_plane = HalfPlane::Upper;  // Upper: CAM poles, Lower: CE poles
    bool loo_stability = true;
};

// Froissart-doublet and stability filtering; never throws, may return empty.
std::vector<ComplexPole> filter_spurious(const std::vector<ComplexPole>& poles,
                                         const RationalApproximant& ra,
                                         std::span<const Sample> samples,
                                         const FilterPolicy& policy = {},
                                         const PadeOptions& opts = {});

// Pole CSV: axis, fixed_value, re_pos, im_pos, re_residue, im_residue,
// pole_zero_dist, stability, flags.
struct PoleRecord {
    Axis axis = Axis::AngularMomentum;
    double fixed_value = 0.0;
    ComplexPole pole;
};

void write_pole_csv(std::span<const PoleRecord> records, std::ostream& out);
std::vector<PoleRecord> read_pole_csv(std::istream& in, const std::string& source_name = "<stream>");

}  // namespace cam

// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace cam {

using Complex = std::complex<double>;

inline constexpr const char* version_string = "0.1.0";

// hbar^2/(2*m_u) expressed in meV*Angstrom^2, from CODATA-2018 values of
// hbar and the atomic mass constant. With this constant,
//   k^2 [1/A^2] = mu [u] * E [meV] / hbar_sq_over_two_amu.
inline constexpr double hbar_sq_over_two_amu = 2.0900796402483611;

// Bad inputs, violated preconditions, schema errors. CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical failures: degenerate data, non-convergence. CLI exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Quadrature failure carrying the last usable estimate.
class QuadratureError : public NumericalError {
public:
    QuadratureError(const std::string& msg, double last)
        : NumericalError(msg), last_estimate(last) {}
    double last_estimate;
};

}  // namespace cam

// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#include "cam/synthetic.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cam/textio.hpp"

namespace cam {

Complex EnergyPoly::operator()(double e) const
{
    Complex acc = 0.0;
    const double de = e - e_ref;
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = acc * de + coeffs[i];
    return acc;
}

Complex PolePath::lambda_at(double e) const
{
    switch (kind) {
    case Kind::SqrtShift: {
        // Rigid-rotor path: J(E) = -1/2 + sqrt(2 I (E - e0 + i/tau) + 1/4),
        // i.e. Lambda = J(J+1) exactly linear in E. Positions live in the
        // lambda = J + 1/2 variable, so the -1/2 cancels.
        const Complex arg = 2.0 * inertia * (Complex(e - e0, 0.0) + Complex(0.0, 1.0 / tau)) + 0.25;
        return std::sqrt(arg);
    }
    case Kind::Linear:
        return lambda_ref + slope * (e - e_ref);
    case Kind::Table: {
        if (table_e.empty())
            throw ValidationError("empty table pole path");
        if (e <= table_e.front())
            return table_lambda.front();
        if (e >= table_e.back())
            return table_lambda.back();
        std::size_t i = 0;
        while (i + 1 < table_e.size() && table_e[i + 1] < e)
            ++i;
        return lerp(table_e[i], table_lambda[i], table_e[i + 1], table_lambda[i + 1], e);
    }
    }
    throw ValidationError("unknown pole path kind");
}

void PoleModelSpec::validate() const
{
    transition.validate();
    if (j_min != transition.j_min())
        throw ValidationError("model j_min must equal max(omega, omega')");
    if (j_max < j_min)
        throw ValidationError("model has empty J range");
    if (energy_grid.empty())
        throw ValidationError("model has empty energy grid");
    for (std::size_t i = 1; i < energy_grid.size(); ++i)
        if (!(energy_grid[i] > energy_grid[i - 1]))
            throw ValidationError("model energy grid must be strictly increasing");
    if (background.size() > 5)
        throw ValidationError("background polynomial degree must be <= 4");
    for (const PoleSpec& p : poles) {
        if (p.path.kind == PolePath::Kind::SqrtShift &&
            (!(p.path.inertia > 0.0) || !(p.path.tau > 0.0)))
            throw ValidationError("sqrt pole path needs positive inertia and tau");
        for (double e : energy_grid) {
            const double im = p.path.lambda_at(e).imag();
            if (!(im > 0.0 && im < 6.0))
                throw ValidationError("pole path leaves Im lambda in (0, 6) at E=" +
                                      format_double(e));
        }
    }
    kinematics.validate(energy_grid.size());
}

Complex model_value(const PoleModelSpec& spec, double e, Complex lambda)
{
    Complex acc = 0.0;
    for (std::size_t k = spec.background.size(); k-- > 0;)
        acc = acc * lambda + spec.background[k](e);
    for (const PoleSpec& p : spec.poles)
        acc += p.residue(e) / (lambda - p.path.lambda_at(e));
    return acc;
}

SMatrixTable generate_table(const PoleModelSpec& spec)
{
    spec.validate();
    SMatrixTable table;
    table.transition = spec.transition;
    table.energies = spec.energy_grid;
    table.j_min = spec.j_min;
    table.j_max = spec.j_max;
    table.kinematics = spec.kinematics;
    table.threshold_mev = spec.threshold_mev;
    table.suppress_unitarity_warnings = true;
    table.values.resize(table.n_energies() * static_cast<std::size_t>(table.n_j()));

    for (std::size_t ei = 0; ei < table.n_energies(); ++ei) {
        const double e = table.energies[ei];
        for (const PoleSpec& p : spec.poles) {
            const Complex lp = p.path.lambda_at(e);
            for (int j = spec.j_min; j <= spec.j_max; ++j) {
                if (std::abs(lp - Complex(j + 0.5, 0.0)) < 1e-3) {
                    std::ostringstream os;
                    os << "pole at lambda=" << lp.real() << (lp.imag() < 0 ? "-" : "+")
                       << std::abs(lp.imag()) << "i collides with node (E=" << format_double(e)
                       << ", J=" << j << ")";
                    throw ValidationError(os.str());
                }
            }
        }
        for (int j = spec.j_min; j <= spec.j_max; ++j)
            table.at(ei, j) = model_value(spec, e, Complex(j + 0.5, 0.0));
    }
    table.validate();
    return table;
}

std::vector<ComplexPole> exact_poles(const PoleModelSpec& spec, double e)
{
    std::vector<ComplexPole> out;
    for (const PoleSpec& p : spec.poles) {
        ComplexPole pole;
        pole.position = p.path.lambda_at(e);
        pole.residue = p.residue(e);
        out.push_back(pole);
    }
    return out;
}

Complex exact_s_conj(const PoleModelSpec& spec, double e, Complex lambda)
{
    return std::conj(model_value(spec, e, std::conj(lambda)));
}

Trajectory exact_trajectory(const PoleModelSpec& spec, std::size_t pole_index,
                            const std::string& label)
{
    if (pole_index >= spec.poles.size())
        throw ValidationError("pole index out of range");
    Trajectory traj;
    traj.axis = Axis::AngularMomentum;
    traj.label = label;
    const PoleSpec& p = spec.poles[pole_index];
    for (double e : spec.energy_grid) {
        TrajectoryEntry entry;
        entry.ordinal = e;
        entry.position = p.path.lambda_at(e);
        entry.residue = p.residue(e);
        entry.s_conj = exact_s_conj(spec, e, entry.position);
        traj.entries.push_back(entry);
    }
    return traj;
}

double exact_ics(const PoleModelSpec& spec, double e)
{
    if (spec.threshold_mev && e < *spec.threshold_mev)
        throw ValidationError("channel closed below threshold");
    const double k2 = wavevector_squared(spec.kinematics, e);
    // Independent of pws_ics on purpose: descending J, extended precision.
    long double acc = 0.0L;
    for (int j = spec.j_max; j >= spec.j_min; --j) {
        const Complex s = model_value(spec, e, Complex(j + 0.5, 0.0));
        const long double re = s.real(), im = s.imag();
        acc += (static_cast<long double>(j) + 0.5L) * (re * re + im * im);
    }
    return static_cast<double>(2.0L * std::numbers::pi_v<long double> / k2 * acc);
}

namespace {

Complex complex_from_json(const nlohmann::json& j)
{
    if (!j.is_array() || j.size() != 2)
        throw ValidationError("complex values must be [re, im] pairs");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

nlohmann::json complex_to_json(const Complex& c)
{
    return nlohmann::json::array({c.real(), c.imag()});
}

EnergyPoly energy_poly_from_json(const nlohmann::json& j)
{
    EnergyPoly p;
    if (j.is_array()) {  // shorthand: constant-coefficient list
        for (const auto& c : j)
            p.coeffs.push_back(complex_from_json(c));
        return p;
    }
    p.e_ref = j.value("e_ref", 0.0);
    for (const auto& c : j.at("coeffs"))
        p.coeffs.push_back(complex_from_json(c));
    return p;
}

nlohmann::json energy_poly_to_json(const EnergyPoly& p)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Complex& c : p.coeffs)
        coeffs.push_back(complex_to_json(c));
    return {{"e_ref", p.e_ref}, {"coeffs", coeffs}};
}

}  // namespace

nlohmann::json spec_to_json(const PoleModelSpec& spec)
{
    nlohmann::json j;
    j["format"] = "cam-regge-model";
    j["format_version"] = 1;
    j["transition"] = {{"v", spec.transition.v},         {"j", spec.transition.j},
                       {"omega", spec.transition.omega}, {"v_p", spec.transition.v_p},
                       {"j_p", spec.transition.j_p},     {"omega_p", spec.transition.omega_p}};
    j["energy_grid"] = spec.energy_grid;
    j["j_min"] = spec.j_min;
    j["j_max"] = spec.j_max;
    if (spec.kinematics.mode == KinematicsMode::ReducedMass)
        j["kinematics"] = {{"mode", "reduced_mass"}, {"mu_amu", spec.kinematics.mu_amu}};
    else
        j["kinematics"] = {{"mode", "explicit_k"}, {"k_invA", spec.kinematics.k_values}};
    if (spec.threshold_mev)
        j["threshold_mev"] = *spec.threshold_mev;
    nlohmann::json bg = nlohmann::json::array();
    for (const EnergyPoly& p : spec.background)
        bg.push_back(energy_poly_to_json(p));
    j["background"] = bg;
    nlohmann::json poles = nlohmann::json::array();
    for (const PoleSpec& p : spec.poles) {
        nlohmann::json pj;
        switch (p.path.kind) {
        case PolePath::Kind::SqrtShift:
            pj["type"] = "sqrt_shift";
            pj["inertia"] = p.path.inertia;
            pj["e0"] = p.path.e0;
            pj["tau"] = p.path.tau;
            break;
        case PolePath::Kind::Linear:
            pj["type"] = "linear";
            pj["lambda_ref"] = complex_to_json(p.path.lambda_ref);
            pj["slope"] = complex_to_json(p.path.slope);
            pj["e_ref"] = p.path.e_ref;
            break;
        case PolePath::Kind::Table:
            pj["type"] = "table";
            pj["e"] = p.path.table_e;
            pj["lambda"] = nlohmann::json::array();
            for (const Complex& c : p.path.table_lambda)
                pj["lambda"].push_back(complex_to_json(c));
            break;
        }
        pj["residue"] = energy_poly_to_json(p.residue);
        poles.push_back(pj);
    }
    j["poles"] = poles;
    return j;
}

PoleModelSpec spec_from_json(const nlohmann::json& j)
{
    if (j.value("format", "") != "cam-regge-model")
        throw ValidationError("not a cam-regge model spec document");
    PoleModelSpec spec;
    const auto& tr = j.at("transition");
    spec.transition = {tr.at("v"), tr.at("j"), tr.at("omega"),
                       tr.at("v_p"), tr.at("j_p"), tr.at("omega_p")};
    if (j.contains("energy_grid") && j.at("energy_grid").is_object()) {
        const auto& g = j.at("energy_grid");
        const double start = g.at("start");
        const double step = g.at("step");
        const int count = g.at("count");
        for (int i = 0; i < count; ++i)
            spec.energy_grid.push_back(start + step * i);
    } else {
        spec.energy_grid = j.at("energy_grid").get<std::vector<double>>();
    }
    spec.j_min = j.at("j_min");
    spec.j_max = j.at("j_max");
    const auto& kin = j.at("kinematics");
    if (kin.at("mode") == "reduced_mass") {
        spec.kinematics.mode = KinematicsMode::ReducedMass;
        spec.kinematics.mu_amu = kin.at("mu_amu");
    } else {
        spec.kinematics.mode = KinematicsMode::ExplicitWavevector;
        spec.kinematics.e_grid = spec.energy_grid;
        spec.kinematics.k_values = kin.at("k_invA").get<std::vector<double>>();
    }
    if (j.contains("threshold_mev"))
        spec.threshold_mev = j.at("threshold_mev").get<double>();
    for (const auto& b : j.value("background", nlohmann::json::array()))
        spec.background.push_back(energy_poly_from_json(b));
    for (const auto& pj : j.value("poles", nlohmann::json::array())) {
        PoleSpec p;
        const std::string type = pj.at("type");
        if (type == "sqrt_shift") {
            p.path.kind = PolePath::Kind::SqrtShift;
            p.path.inertia = pj.at("inertia");
            p.path.e0 = pj.at("e0");
            p.path.tau = pj.at("tau");
        } else if (type == "linear") {
            p.path.kind = PolePath::Kind::Linear;
            p.path.lambda_ref = complex_from_json(pj.at("lambda_ref"));
            p.path.slope = complex_from_json(pj.at("slope"));
            p.path.e_ref = pj.value("e_ref", 0.0);
        } else if (type == "table") {
            p.path.kind = PolePath::Kind::Table;
            p.path.table_e = pj.at("e").get<std::vector<double>>();
            for (const auto& c : pj.at("lambda"))
                p.path.table_lambda.push_back(complex_from_json(c));
            if (p.path.table_e.size() != p.path.table_lambda.size())
                throw ValidationError("table pole path size mismatch");
        } else {
            throw ValidationError("unknown pole path type '" + type + "'");
        }
        p.residue = energy_poly_from_json(pj.at("residue"));
        spec.poles.push_back(p);
    }
    spec.validate();
    return spec;
}

PoleModelSpec load_model_spec_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open model spec: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad JSON in " + path + ": " + e.what());
    }
    return spec_from_json(j);
}

}  // namespace cam

// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#include "cam/smatrix.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cam/textio.hpp"

namespace cam {

void TransitionLabel::validate() const
{
    if (v < 0 || j < 0 || omega < 0 || v_p < 0 || j_p < 0 || omega_p < 0)
        throw ValidationError("transition quantum numbers must be non-negative");
    if (omega > j)
        throw ValidationError("transition has omega > j");
    if (omega_p > j_p)
        throw ValidationError("transition has omega' > j'");
}

std::string TransitionLabel::str() const
{
    std::ostringstream os;
    os << v << " " << j << " " << omega << " -> " << v_p << " " << j_p << " " << omega_p;
    return os.str();
}

void Kinematics::validate(std::size_t n_energies) const
{
    if (mode == KinematicsMode::ReducedMass) {
        if (!(mu_amu > 0.0))
            throw ValidationError("reduced mass must be positive");
        return;
    }
    if (e_grid.size() != n_energies || k_values.size() != n_energies)
        throw ValidationError("explicit wavevector table must cover every grid energy");
    for (double k : k_values)
        if (!(k > 0.0))
            throw ValidationError("explicit wavevector entries must be positive");
}

double wavevector_squared(const Kinematics& kin, double e_mev)
{
    if (!(e_mev > 0.0))
        throw ValidationError("below zero collision energy");
    if (kin.mode == KinematicsMode::ReducedMass)
        return kin.mu_amu * e_mev / hbar_sq_over_two_amu;
    for (std::size_t i = 0; i < kin.e_grid.size(); ++i) {
        if (std::abs(kin.e_grid[i] - e_mev) <= 1e-9 * (1.0 + std::abs(e_mev)))
            return kin.k_values[i] * kin.k_values[i];
    }
    throw ValidationError("explicit wavevector undefined at E=" + format_double(e_mev));
}

std::size_t SMatrixTable::energy_index(double e_mev) const
{
    auto it = std::lower_bound(energies.begin(), energies.end(),
                               e_mev - 1e-9 * (1.0 + std::abs(e_mev)));
    if (it != energies.end() && std::abs(*it - e_mev) <= 1e-9 * (1.0 + std::abs(e_mev)))
        return static_cast<std::size_t>(it - energies.begin());
    throw ValidationError("E=" + format_double(e_mev) + " is not a grid energy");
}

void SMatrixTable::validate(double unitarity_slack)
{
    transition.validate();
    if (j_min != transition.j_min())
        throw ValidationError("J range must start at J_min=max(omega, omega') = " +
                              std::to_string(transition.j_min()));
    if (j_max < j_min)
        throw ValidationError("empty J range");
    if (energies.empty())
        throw ValidationError("empty energy grid");
    for (std::size_t i = 1; i < energies.size(); ++i)
        if (!(energies[i] > energies[i - 1]))
            throw ValidationError("energies must be strictly increasing");
    if (values.size() != n_energies() * static_cast<std::size_t>(n_j()))
        throw ValidationError("S-matrix value count does not match the (E, J) grid");
    kinematics.validate(n_energies());

    if (suppress_unitarity_warnings)
        return;
    for (std::size_t ei = 0; ei < n_energies(); ++ei) {
        for (int j = j_min; j <= j_max; ++j) {
            const double mag = std::abs(at(ei, j));
            if (mag > 1.0 + unitarity_slack) {
                std::ostringstream os;
                os << "unitarity violation at (E=" << format_double(energies[ei]) << ", J=" << j
                   << "): |S|=" << mag;
                warnings.push_back(os.str());
            }
        }
    }
}

double reaction_probability(Complex s, double slack)
{
    const double p = std::norm(s);
    if (p > (1.0 + slack) * (1.0 + slack))
        throw ValidationError("reaction probability above 1+slack");
    return p;
}

double pws_ics(const SMatrixTable& table, double e_mev)
{
    const std::size_t ei = table.energy_index(e_mev);
    if (table.threshold_mev && e_mev < *table.threshold_mev)
        throw ValidationError("channel closed: E=" + format_double(e_mev) + " below threshold " +
                              format_double(*table.threshold_mev));
    const double k2 = wavevector_squared(table.kinematics, e_mev);
    double acc = 0.0;
    for (int j = table.j_min; j <= table.j_max; ++j)
        acc += (j + 0.5) * std::norm(table.at(ei, j));
    return 2.0 * std::numbers::pi / k2 * acc;
}

namespace {

struct CellKey {
    double e;
    int j;
    bool operator<(const CellKey& o) const
    {
        if (e != o.e)
            return e < o.e;
        return j < o.j;
    }
};

}  // namespace

SMatrixTable load_smatrix_table(std::istream& in, const std::string& source_name,
                                double unitarity_slack)
{
    SMatrixTable table;
    bool have_transition = false;
    bool have_kinematics = false;
    bool explicit_k = false;
    std::map<CellKey, Complex> cells;
    std::map<double, double> k_by_energy;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        const std::string where = source_name + ":" + std::to_string(line_no);
        if (t.empty())
            continue;
        if (t[0] == '#') {
            const std::string meta = trim(t.substr(1));
            if (meta.rfind("transition:", 0) == 0) {
                std::istringstream ms(meta.substr(11));
                std::string arrow;
                TransitionLabel tr;
                if (!(ms >> tr.v >> tr.j >> tr.omega >> arrow >> tr.v_p >> tr.j_p >> tr.omega_p) ||
                    arrow != "->")
                    throw ValidationError("bad transition header at " + where);
                table.transition = tr;
                have_transition = true;
            } else if (meta.rfind("kinematics:", 0) == 0) {
                const std::string spec = trim(meta.substr(11));
                if (spec.rfind("mu_amu=", 0) == 0) {
                    table.kinematics.mode = KinematicsMode::ReducedMass;
                    table.kinematics.mu_amu = parse_double(spec.substr(7), where);
                } else if (spec == "explicit_k") {
                    table.kinematics.mode = KinematicsMode::ExplicitWavevector;
                    explicit_k = true;
                } else {
                    throw ValidationError("bad kinematics header at " + where);
                }
                have_kinematics = true;
            } else if (meta.rfind("threshold_mev=", 0) == 0) {
                table.threshold_mev = parse_double(meta.substr(14), where);
            } else if (meta.rfind("unitarity_warnings:", 0) == 0) {
                table.suppress_unitarity_warnings = trim(meta.substr(19)) == "off";
            }
            // Unknown comment lines pass through silently.
            continue;
        }
        if (t[0] == 'E' || t[0] == 'e')
            continue;  // column header line

        const auto fields = split_csv_line(t);
        const std::size_t expected = explicit_k ? 5u : 4u;
        if (fields.size() != expected)
            throw ValidationError("expected " + std::to_string(expected) + " columns at " + where);
        const double e = parse_double(fields[0], where);
        const int j = parse_int(fields[1], where);
        const Complex s(parse_double(fields[2], where), parse_double(fields[3], where));
        const CellKey key{e, j};
        if (cells.count(key))
            throw ValidationError("duplicate cell (E=" + fields[0] + ", J=" + fields[1] + ") at " +
                                  where);
        cells[key] = s;
        if (explicit_k) {
            const double k = parse_double(fields[4], where);
            auto it = k_by_energy.find(e);
            if (it == k_by_energy.end())
                k_by_energy[e] = k;
            else if (std::abs(it->second - k) > 1e-12 * (1.0 + std::abs(k)))
                throw ValidationError("inconsistent k_invA for E=" + fields[0] + " at " + where);
        }
    }

    if (!have_transition)
        throw ValidationError(source_name + ": missing '# transition:' header");
    if (!have_kinematics)
        throw ValidationError(source_name + ": missing '# kinematics:' header");
    if (cells.empty())
        throw ValidationError(source_name + ": no data rows");

    // Canonicalize to energy-major, J-minor regardless of row order.
    std::vector<double> energies;
    int jlo = cells.begin()->first.j, jhi = jlo;
    for (const auto& [key, s] : cells) {
        if (energies.empty() || energies.back() != key.e)
            energies.push_back(key.e);
        jlo = std::min(jlo, key.j);
        jhi = std::max(jhi, key.j);
    }
    std::vector<bool> j_seen(static_cast<std::size_t>(jhi - jlo + 1), false);
    for (const auto& [key, s] : cells)
        j_seen[static_cast<std::size_t>(key.j - jlo)] = true;
    for (int j = jlo; j <= jhi; ++j)
        if (!j_seen[static_cast<std::size_t>(j - jlo)])
            throw ValidationError("non-contiguous J range in " + source_name + ": J=" +
                                  std::to_string(j) + " never appears");

    table.energies = energies;
    table.j_min = jlo;
    table.j_max = jhi;
    table.values.assign(energies.size() * static_cast<std::size_t>(jhi - jlo + 1), Complex{});

    for (std::size_t ei = 0; ei < energies.size(); ++ei) {
        for (int j = jlo; j <= jhi; ++j) {
            auto it = cells.find(CellKey{energies[ei], j});
            if (it == cells.end()) {
                std::ostringstream os;
                os << "missing cell (E=" << format_double(energies[ei]) << ", J=" << j << ") in "
                   << source_name;
                throw ValidationError(os.str());
            }
            table.at(ei, j) = it->second;
        }
    }
    if (explicit_k) {
        table.kinematics.e_grid = energies;
        table.kinematics.k_values.clear();
        for (double e : energies)
            table.kinematics.k_values.push_back(k_by_energy.at(e));
    }
    table.validate(unitarity_slack);
    return table;
}

SMatrixTable load_smatrix_table_file(const std::string& path, double unitarity_slack)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open S-matrix table: " + path);
    return load_smatrix_table(in, path, unitarity_slack);
}

void write_smatrix_csv(const SMatrixTable& table, std::ostream& out)
{
    out << "# cam-regge smatrix table v1\n";
    out << "# transition: " << table.transition.str() << "\n";
    if (table.kinematics.mode == KinematicsMode::ReducedMass)
        out << "# kinematics: mu_amu=" << format_double(table.kinematics.mu_amu) << "\n";
    else
        out << "# kinematics: explicit_k\n";
    if (table.threshold_mev)
        out << "# threshold_mev=" << format_double(*table.threshold_mev) << "\n";
    if (table.suppress_unitarity_warnings)
        out << "# unitarity_warnings: off\n";
    const bool explicit_k = table.kinematics.mode == KinematicsMode::ExplicitWavevector;
    out << (explicit_k ? "E_meV,J,Re_S,Im_S,k_invA\n" : "E_meV,J,Re_S,Im_S\n");
    for (std::size_t ei = 0; ei < table.n_energies(); ++ei) {
        for (int j = table.j_min; j <= table.j_max; ++j) {
            const Complex& s = table.at(ei, j);
            out << format_double(table.energies[ei]) << "," << j << ","
                << format_double(s.real()) << "," << format_double(s.imag());
            if (explicit_k)
                out << "," << format_double(table.kinematics.k_values[ei]);
            out << "\n";
        }
    }
}

nlohmann::json table_to_json(const SMatrixTable& table)
{
    nlohmann::json j;
    j["format"] = "cam-regge-table";
    j["format_version"] = 1;
    j["transition"] = {{"v", table.transition.v},     {"j", table.transition.j},
                       {"omega", table.transition.omega}, {"v_p", table.transition.v_p},
                       {"j_p", table.transition.j_p},  {"omega_p", table.transition.omega_p}};
    if (table.kinematics.mode == KinematicsMode::ReducedMass) {
        j["kinematics"] = {{"mode", "reduced_mass"}, {"mu_amu", table.kinematics.mu_amu}};
    } else {
        j["kinematics"] = {{"mode", "explicit_k"}, {"k_invA", table.kinematics.k_values}};
    }
    if (table.threshold_mev)
        j["threshold_mev"] = *table.threshold_mev;
    j["energies_mev"] = table.energies;
    j["j_min"] = table.j_min;
    j["j_max"] = table.j_max;
    std::vector<double> re, im;
    re.reserve(table.values.size());
    im.reserve(table.values.size());
    for (const Complex& s : table.values) {
        re.push_back(s.real());
        im.push_back(s.imag());
    }
    j["s_real"] = re;
    j["s_imag"] = im;
    j["suppress_unitarity_warnings"] = table.suppress_unitarity_warnings;
    j["warnings"] = table.warnings;
    return j;
}

SMatrixTable table_from_json(const nlohmann::json& j)
{
    if (j.value("format", "") != "cam-regge-table")
        throw ValidationError("not a cam-regge table JSON document");
    SMatrixTable table;
    const auto& tr = j.at("transition");
    table.transition = {tr.at("v"), tr.at("j"), tr.at("omega"),
                        tr.at("v_p"), tr.at("j_p"), tr.at("omega_p")};
    table.energies = j.at("energies_mev").get<std::vector<double>>();
    table.j_min = j.at("j_min");
    table.j_max = j.at("j_max");
    const auto& kin = j.at("kinematics");
    if (kin.at("mode") == "reduced_mass") {
        table.kinematics.mode = KinematicsMode::ReducedMass;
        table.kinematics.mu_amu = kin.at("mu_amu");
    } else {
        table.kinematics.mode = KinematicsMode::ExplicitWavevector;
        table.kinematics.e_grid = table.energies;
        table.kinematics.k_values = kin.at("k_invA").get<std::vector<double>>();
    }
    if (j.contains("threshold_mev"))
        table.threshold_mev = j.at("threshold_mev").get<double>();
    const auto re = j.at("s_real").get<std::vector<double>>();
    const auto im = j.at("s_imag").get<std::vector<double>>();
    if (re.size() != im.size())
        throw ValidationError("s_real/s_imag size mismatch");
    table.values.resize(re.size());
    for (std::size_t i = 0; i < re.size(); ++i)
        table.values[i] = Complex(re[i], im[i]);
    table.suppress_unitarity_warnings = j.value("suppress_unitarity_warnings", false);
    table.validate();
    return table;
}

}  // namespace cam

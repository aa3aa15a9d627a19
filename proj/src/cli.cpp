// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#include "cam/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cam/cebridge.hpp"
#include "cam/numerics.hpp"
#include "cam/synthetic.hpp"
#include "cam/textio.hpp"

namespace fs = std::filesystem;

namespace cam::cli {

void RunConfig::validate() const
{
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0))
            throw ValidationError(std::string("config threshold must be positive: ") + name);
    };
    positive(pade.options.trunc_rel_tol, "pade.trunc_rel_tol");
    positive(pade.options.interp_rel_tol, "pade.interp_rel_tol");
    for (const FilterPolicy* f : {&pade.filter_j, &pade.filter_e}) {
        positive(f->eps_froissart, "filter.eps_froissart");
        positive(f->residue_floor, "filter.residue_floor");
        positive(f->match_radius, "filter.match_radius");
        positive(f->stability_fraction, "filter.stability_fraction");
        positive(f->im_max, "filter.im_max");
    }
    positive(tracking.match_radius, "tracking.match_radius");
    positive(tracking.trend_tol, "tracking.trend_tol");
    positive(tracking.near_axis_max, "tracking.near_axis_max");
    positive(quad_rel_tol, "quad_rel_tol");
    positive(unitarity_slack, "unitarity_slack");
    if (tracking.gap_max < 0)
        throw ValidationError("tracking.gap_max must be >= 0");
    if (jobs < 1)
        throw ValidationError("jobs must be >= 1");
    if (pade.j_window_size < 0 || pade.energy_max_nodes < 4)
        throw ValidationError("pade window sizes out of range");
}

namespace {

nlohmann::json filter_to_json(const FilterPolicy& f)
{
    return {{"eps_froissart", f.eps_froissart},
            {"residue_floor", f.residue_floor},
            {"match_radius", f.match_radius},
            {"stability_fraction", f.stability_fraction},
            {"im_max", f.im_max},
            {"half_plane", f.half_plane == HalfPlane::Upper ? "upper" : "lower"},
            {"loo_stability", f.loo_stability}};
}

void filter_from_json(const nlohmann::json& j, FilterPolicy& f)
{
    f.eps_froissart = j.value("eps_froissart", f.eps_froissart);
    f.residue_floor = j.value("residue_floor", f.residue_floor);
    f.match_radius = j.value("match_radius", f.match_radius);
    f.stability_fraction = j.value("stability_fraction", f.stability_fraction);
    f.im_max = j.value("im_max", f.im_max);
    if (j.contains("half_plane"))
        f.half_plane = j.at("half_plane") == "upper" ? HalfPlane::Upper : HalfPlane::Lower;
    f.loo_stability = j.value("loo_stability", f.loo_stability);
}

}  // namespace

nlohmann::json config_to_json(const RunConfig& cfg)
{
    nlohmann::json j;
    j["pade"] = {{"trunc_rel_tol", cfg.pade.options.trunc_rel_tol},
                 {"interp_rel_tol", cfg.pade.options.interp_rel_tol},
                 {"j_window_size", cfg.pade.j_window_size},
                 {"energy_max_nodes", cfg.pade.energy_max_nodes},
                 {"filter_j", filter_to_json(cfg.pade.filter_j)},
                 {"filter_e", filter_to_json(cfg.pade.filter_e)}};
    if (cfg.pade.energy_window_min)
        j["pade"]["energy_window_min"] = *cfg.pade.energy_window_min;
    if (cfg.pade.energy_window_max)
        j["pade"]["energy_window_max"] = *cfg.pade.energy_window_max;
    j["tracking"] = {{"match_radius", cfg.tracking.match_radius},
                     {"gap_max", cfg.tracking.gap_max},
                     {"trend_tol", cfg.tracking.trend_tol},
                     {"near_axis_max", cfg.tracking.near_axis_max},
                     {"trend_window", cfg.tracking.trend_window}};
    j["label_merge"] = cfg.label_merge;
    j["smooth_labels"] = cfg.smooth_labels;
    j["quad_rel_tol"] = cfg.quad_rel_tol;
    j["unitarity_slack"] = cfg.unitarity_slack;
    j["out_dir"] = cfg.out_dir;
    j["jobs"] = cfg.jobs;
    j["quiet"] = cfg.quiet;
    return j;
}

RunConfig config_from_json(const nlohmann::json& j)
{
    RunConfig cfg;
    if (j.contains("pade")) {
        const auto& p = j.at("pade");
        cfg.pade.options.trunc_rel_tol = p.value("trunc_rel_tol", cfg.pade.options.trunc_rel_tol);
        cfg.pade.options.interp_rel_tol = p.value("interp_rel_tol", cfg.pade.options.interp_rel_tol);
        cfg.pade.j_window_size = p.value("j_window_size", cfg.pade.j_window_size);
        cfg.pade.energy_max_nodes = p.value("energy_max_nodes", cfg.pade.energy_max_nodes);
        if (p.contains("energy_window_min"))
            cfg.pade.energy_window_min = p.at("energy_window_min").get<double>();
        if (p.contains("energy_window_max"))
            cfg.pade.energy_window_max = p.at("energy_window_max").get<double>();
        if (p.contains("filter_j"))
            filter_from_json(p.at("filter_j"), cfg.pade.filter_j);
        if (p.contains("filter_e"))
            filter_from_json(p.at("filter_e"), cfg.pade.filter_e);
    }
    if (j.contains("tracking")) {
        const auto& t = j.at("tracking");
        cfg.tracking.match_radius = t.value("match_radius", cfg.tracking.match_radius);
        cfg.tracking.gap_max = t.value("gap_max", cfg.tracking.gap_max);
        cfg.tracking.trend_tol = t.value("trend_tol", cfg.tracking.trend_tol);
        cfg.tracking.near_axis_max = t.value("near_axis_max", cfg.tracking.near_axis_max);
        cfg.tracking.trend_window = t.value("trend_window", cfg.tracking.trend_window);
    }
    if (j.contains("label_merge"))
        cfg.label_merge = j.at("label_merge").get<std::map<std::string, std::string>>();
    if (j.contains("smooth_labels"))
        cfg.smooth_labels = j.at("smooth_labels").get<std::vector<std::string>>();
    cfg.quad_rel_tol = j.value("quad_rel_tol", cfg.quad_rel_tol);
    cfg.unitarity_slack = j.value("unitarity_slack", cfg.unitarity_slack);
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    cfg.jobs = j.value("jobs", cfg.jobs);
    cfg.quiet = j.value("quiet", cfg.quiet);
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::string resolved = path;
    if (resolved.empty()) {
        if (const char* env = std::getenv("CAM_REGGE_CONFIG"))
            resolved = env;
    }
    if (resolved.empty())
        return RunConfig{};
    std::ifstream in(resolved);
    if (!in)
        throw ValidationError("cannot open config file: " + resolved);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("bad JSON in config " + resolved + ": " + e.what());
    }
    return config_from_json(j);
}

void write_text_atomic(const std::string& path, const std::string& content)
{
    const fs::path target(path);
    if (target.has_parent_path())
        fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ValidationError("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

namespace {

std::string resolve_out(const RunConfig& cfg, const std::string& name)
{
    const fs::path p(name);
    if (p.is_absolute())
        return name;
    return (fs::path(cfg.out_dir) / p).string();
}

void require_input(const std::string& path)
{
    if (!fs::exists(path))
        throw ValidationError("input file does not exist: " + path);
}

struct ManifestScope {
    const RunConfig* cfg;
    std::string command;
    std::vector<std::string> inputs;
    CmdResult result;

    void finish(const std::string& status, const std::string& error = "")
    {
        nlohmann::json m;
        m["command"] = command;
        m["versions"] = {{"cam", version_string}, {"manifest_format", 1}};
        m["inputs"] = inputs;
        m["outputs"] = result.outputs;
        const nlohmann::json cfg_json = config_to_json(*cfg);
        m["config"] = cfg_json;
        std::ostringstream hash;
        hash << std::hex << fnv1a(cfg_json.dump());
        m["config_hash"] = hash.str();
        m["warnings"] = result.warnings;
        m["notes"] = result.notes;
        m["status"] = status;
        if (!error.empty())
            m["error"] = error;
        write_text_atomic(resolve_out(*cfg, command + "_manifest.json"), m.dump(2) + "\n");
    }
};

// Shared wrapper: runs the body, maps exceptions to exit codes, always
// writes the manifest.
template <typename Body>
CmdResult run_command(const RunConfig& cfg, const std::string& command,
                      std::vector<std::string> inputs, Body body)
{
    cfg.validate();
    ManifestScope scope{&cfg, command, std::move(inputs), {}};
    try {
        body(scope.result);
        scope.finish("ok");
        return scope.result;
    } catch (const ValidationError& e) {
        scope.result.exit_code = 1;
        scope.result.warnings.push_back(std::string("validation error: ") + e.what());
        scope.finish("error", e.what());
        if (!cfg.quiet)
            std::fprintf(stderr, "cam %s: %s\n", command.c_str(), e.what());
        return scope.result;
    } catch (const std::exception& e) {
        scope.result.exit_code = 2;
        scope.result.warnings.push_back(std::string("numerical error: ") + e.what());
        scope.finish("error", e.what());
        if (!cfg.quiet)
            std::fprintf(stderr, "cam %s: %s\n", command.c_str(), e.what());
        return scope.result;
    }
}

std::vector<Sample> lambda_samples(const SMatrixTable& table, std::size_t ei,
                                   const std::set<int>& j_subset)
{
    std::vector<Sample> samples;
    for (int j = table.j_min; j <= table.j_max; ++j) {
        if (!j_subset.empty() && !j_subset.count(j))
            continue;
        samples.push_back({j + 0.5, table.at(ei, j)});
    }
    return samples;
}

}  // namespace

std::vector<RationalApproximant> build_per_energy_approximants(const SMatrixTable& table,
                                                               const RunConfig& cfg,
                                                               std::vector<std::string>& warnings)
{
    std::vector<RationalApproximant> out(table.n_energies());
    std::vector<std::string> notes(table.n_energies());

    // Optional moving node window: centred on the previous energy's retained
    // poles, so weak multiplet members keep local support. Stateful frontier
    // makes this loop sequential; the all-nodes default is parallel.
    if (cfg.pade.j_window_size > 0) {
        std::vector<double> centers;
        for (std::size_t ei = 0; ei < table.n_energies(); ++ei) {
            std::set<int> subset;
            if (!centers.empty()) {
                const int w = cfg.pade.j_window_size;
                for (double c : centers) {
                    const int mid = static_cast<int>(std::lround(c - 0.5));
                    for (int j = mid - w / 2; j <= mid + w / 2; ++j)
                        if (j >= table.j_min && j <= table.j_max)
                            subset.insert(j);
                }
            }
            try {
                out[ei] = build_rational(lambda_samples(table, ei, subset), cfg.pade.options,
                                         Axis::AngularMomentum, table.energies[ei]);
                const auto poles = filter_spurious(extract_poles(out[ei]), out[ei],
                                                   lambda_samples(table, ei, subset),
                                                   cfg.pade.filter_j, cfg.pade.options);
                centers.clear();
                for (const ComplexPole& p : poles)
                    centers.push_back(p.position.real());
            } catch (const std::exception& e) {
                notes[ei] = e.what();
                centers.clear();
            }
        }
    } else {
        parallel_for(table.n_energies(), cfg.jobs, [&](std::size_t ei) {
            try {
                out[ei] = build_rational(lambda_samples(table, ei, {}), cfg.pade.options,
                                         Axis::AngularMomentum, table.energies[ei]);
            } catch (const std::exception& e) {
                notes[ei] = e.what();
            }
        });
    }
    for (std::size_t ei = 0; ei < table.n_energies(); ++ei)
        if (!notes[ei].empty())
            warnings.push_back("E=" + format_double(table.energies[ei]) +
                               ": approximant failed: " + notes[ei]);
    return out;
}

CmdResult cmd_synth(const RunConfig& cfg, const std::string& spec_path, const std::string& out_name)
{
    return run_command(cfg, "synth", {spec_path}, [&](CmdResult& res) {
        require_input(spec_path);
        const PoleModelSpec spec = load_model_spec_file(spec_path);
        const SMatrixTable table = generate_table(spec);
        std::ostringstream os;
        write_smatrix_csv(table, os);
        const std::string out_path = resolve_out(cfg, out_name);
        write_text_atomic(out_path, os.str());
        res.outputs.push_back(out_path);
    });
}

CmdResult cmd_poles_j(const RunConfig& cfg, const std::string& table_path,
                      const std::string& out_name)
{
    return run_command(cfg, "poles-j", {table_path}, [&](CmdResult& res) {
        require_input(table_path);
        SMatrixTable table = load_smatrix_table_file(table_path, cfg.unitarity_slack);
        res.warnings.insert(res.warnings.end(), table.warnings.begin(), table.warnings.end());

        std::vector<RationalApproximant> ras = build_per_energy_approximants(table, cfg, res.warnings);
        std::vector<std::vector<PoleRecord>> per_energy(table.n_energies());
        parallel_for(table.n_energies(), cfg.jobs, [&](std::size_t ei) {
            if (ras[ei].cf_coeffs.empty())
                return;
            // refit against the samples the approximant was built on
            std::vector<Sample> samples;
            for (std::size_t k = 0; k < ras[ei].nodes.size(); ++k)
                samples.push_back({ras[ei].nodes[k], ras[ei].values[k]});
            const auto poles = filter_spurious(extract_poles(ras[ei]), ras[ei], samples,
                                               cfg.pade.filter_j, cfg.pade.options);
            for (const ComplexPole& p : poles)
                per_energy[ei].push_back({Axis::AngularMomentum, table.energies[ei], p});
        });

        std::vector<PoleRecord> records;
        for (const auto& list : per_energy)
            records.insert(records.end(), list.begin(), list.end());
        std::ostringstream os;
        write_pole_csv(records, os);
        const std::string out_path = resolve_out(cfg, out_name);
        write_text_atomic(out_path, os.str());
        res.outputs.push_back(out_path);
    });
}

CmdResult cmd_poles_e(const RunConfig& cfg, const std::string& table_path,
                      const std::string& out_name)
{
    return run_command(cfg, "poles-e", {table_path}, [&](CmdResult& res) {
        require_input(table_path);
        SMatrixTable table = load_smatrix_table_file(table_path, cfg.unitarity_slack);
        res.warnings.insert(res.warnings.end(), table.warnings.begin(), table.warnings.end());

        // Energy-axis nodes: optional window, then even decimation to the cap.
        std::vector<std::size_t> node_idx;
        for (std::size_t ei = 0; ei < table.n_energies(); ++ei) {
            const double e = table.energies[ei];
            if (cfg.pade.energy_window_min && e < *cfg.pade.energy_window_min)
                continue;
            if (cfg.pade.energy_window_max && e > *cfg.pade.energy_window_max)
                continue;
            node_idx.push_back(ei);
        }
        if (node_idx.size() > static_cast<std::size_t>(cfg.pade.energy_max_nodes)) {
            std::vector<std::size_t> picked;
            const std::size_t m = static_cast<std::size_t>(cfg.pade.energy_max_nodes);
            for (std::size_t i = 0; i < m; ++i)
                picked.push_back(node_idx[(i * (node_idx.size() - 1)) / (m - 1)]);
            picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
            node_idx = std::move(picked);
        }
        if (node_idx.size() < 4)
            throw ValidationError("energy window leaves fewer than 4 nodes");

        const int n_j = table.n_j();
        std::vector<std::vector<PoleRecord>> per_j(static_cast<std::size_t>(n_j));
        std::vector<std::string> notes(static_cast<std::size_t>(n_j));
        parallel_for(static_cast<std::size_t>(n_j), cfg.jobs, [&](std::size_t ji) {
            const int j = table.j_min + static_cast<int>(ji);
            std::vector<Sample> samples;
            for (std::size_t ei : node_idx)
                samples.push_back({table.energies[ei], table.at(ei, j)});
            try {
                const RationalApproximant ra = build_rational(samples, cfg.pade.options,
                                                              Axis::Energy, static_cast<double>(j));
                const auto poles = filter_spurious(extract_poles(ra), ra, samples,
                                                   cfg.pade.filter_e, cfg.pade.options);
                for (const ComplexPole& p : poles)
                    per_j[ji].push_back({Axis::Energy, static_cast<double>(j), p});
            } catch (const std::exception& e) {
                notes[ji] = e.what();
            }
        });
        for (std::size_t ji = 0; ji < notes.size(); ++ji)
            if (!notes[ji].empty())
                res.warnings.push_back("J=" + std::to_string(table.j_min + static_cast<int>(ji)) +
                                       ": " + notes[ji]);

        std::vector<PoleRecord> records;
        for (const auto& list : per_j)
            records.insert(records.end(), list.begin(), list.end());
        std::ostringstream os;
        write_pole_csv(records, os);
        const std::string out_path = resolve_out(cfg, out_name);
        write_text_atomic(out_path, os.str());
        res.outputs.push_back(out_path);
    });
}

CmdResult cmd_track(const RunConfig& cfg, const std::string& poles_path,
                    const std::string& out_name)
{
    return run_command(cfg, "track", {poles_path}, [&](CmdResult& res) {
        require_input(poles_path);
        std::ifstream in(poles_path);
        if (!in)
            throw ValidationError("cannot open pole CSV: " + poles_path);
        const std::vector<PoleRecord> records = read_pole_csv(in, poles_path);
        if (records.empty())
            throw ValidationError("pole CSV holds no records: " + poles_path);
        const Axis axis = records.front().axis;
        for (const PoleRecord& r : records)
            if (r.axis != axis)
                throw ValidationError("pole CSV mixes axes; track one axis at a time");

        std::map<double, std::vector<CandidatePole>> grouped;
        for (const PoleRecord& r : records)
            grouped[r.fixed_value].push_back({r.pole.position, r.pole.residue, Complex{}});

        std::vector<Trajectory> trajectories =
            axis == Axis::AngularMomentum ? track(grouped, cfg.tracking)
                                          : track_ce(grouped, cfg.tracking);
        apply_label_merge(trajectories, cfg.label_merge);
        for (const std::string& label : cfg.smooth_labels) {
            for (Trajectory& t : trajectories) {
                if (t.label == label && t.axis == Axis::AngularMomentum) {
                    t = smooth_imaginary_by_crossings(t);
                    res.notes.push_back("trajectory " + label + " smoothed between crossings");
                }
            }
        }
        for (const Trajectory& t : trajectories) {
            if (t.axis != Axis::AngularMomentum)
                continue;
            res.notes.push_back("trajectory " + t.label + " classified " +
                                trajectory_type_name(classify_type(t, cfg.tracking)));
        }

        std::ostringstream os;
        write_trajectory_csv(trajectories, os);
        const std::string out_path = resolve_out(cfg, out_name);
        write_text_atomic(out_path, os.str());
        res.outputs.push_back(out_path);
    });
}

CmdResult cmd_decompose(const RunConfig& cfg, const std::string& table_path,
                        const std::string& traj_path, const std::string& out_name,
                        const std::string& fano_name)
{
    return run_command(cfg, "decompose",
                       traj_path.empty() ? std::vector<std::string>{table_path}
                                         : std::vector<std::string>{table_path, traj_path},
                       [&](CmdResult& res) {
        require_input(table_path);
        SMatrixTable table = load_smatrix_table_file(table_path, cfg.unitarity_slack);
        res.warnings.insert(res.warnings.end(), table.warnings.begin(), table.warnings.end());

        std::vector<Trajectory> trajectories;
        if (!traj_path.empty()) {
            require_input(traj_path);
            std::ifstream in(traj_path);
            if (!in)
                throw ValidationError("cannot open trajectory CSV: " + traj_path);
            trajectories = read_trajectory_csv(in, traj_path);
            for (const Trajectory& t : trajectories)
                if (t.axis != Axis::AngularMomentum)
                    throw ValidationError("decompose expects Regge trajectories");
        }

        std::vector<RationalApproximant> ras = build_per_energy_approximants(table, cfg, res.warnings);
        const DecompositionResult dec =
            decompose(table, trajectories, ras, cfg.quad_rel_tol, cfg.jobs);
        for (const DecompositionRow& row : dec.rows)
            if (row.incomplete)
                res.warnings.push_back("E=" + format_double(row.e_mev) +
                                       " incomplete: " + row.note);

        std::ostringstream os;
        write_decomposition_csv(dec, os);
        const std::string out_path = resolve_out(cfg, out_name);
        write_text_atomic(out_path, os.str());
        res.outputs.push_back(out_path);

        if (!fano_name.empty()) {
            std::vector<FanoFeature> features;
            for (const Trajectory& t : trajectories) {
                if (t.entries.size() < 2)
                    continue;
                // S* refreshed from the per-energy approximants when absent.
                Trajectory enriched = t;
                for (TrajectoryEntry& e : enriched.entries) {
                    if (e.s_conj != Complex(0.0, 0.0))
                        continue;
                    try {
                        const std::size_t ei = table.energy_index(e.ordinal);
                        if (!ras[ei].cf_coeffs.empty())
                            e.s_conj = conjugate_evaluate(ras[ei], e.position);
                    } catch (const std::exception&) {
                        // left at zero; the feature strength degrades gracefully
                    }
                }
                const auto f = find_integer_crossings(enriched);
                features.insert(features.end(), f.begin(), f.end());
            }
            std::ostringstream fs_os;
            write_fano_csv(features, fs_os);
            const std::string fano_path = resolve_out(cfg, fano_name);
            write_text_atomic(fano_path, fs_os.str());
            res.outputs.push_back(fano_path);
        }
    });
}

CmdResult cmd_map(const RunConfig& cfg, const std::string& ce_traj_path, const std::string& label,
                  int j_lo, int j_hi, const std::string& map_name,
                  const std::string& predicted_name)
{
    return run_command(cfg, "map", {ce_traj_path}, [&](CmdResult& res) {
        require_input(ce_traj_path);
        std::ifstream in(ce_traj_path);
        if (!in)
            throw ValidationError("cannot open CE trajectory CSV: " + ce_traj_path);
        std::vector<Trajectory> trajectories = read_trajectory_csv(in, ce_traj_path);
        const Trajectory* ce = nullptr;
        if (label.empty()) {
            if (trajectories.size() != 1)
                throw ValidationError("CE input holds several trajectories; pass --label");
            ce = &trajectories.front();
        } else {
            for (const Trajectory& t : trajectories)
                if (t.label == label)
                    ce = &t;
            if (!ce)
                throw ValidationError("no trajectory labelled '" + label + "' in " + ce_traj_path);
        }
        if (ce->axis != Axis::Energy)
            throw ValidationError("map expects a CE (energy-axis) trajectory");

        int lo = j_lo, hi = j_hi;
        if (lo > hi) {  // unset: use the trajectory span
            lo = static_cast<int>(std::lround(ce->entries.front().ordinal));
            hi = static_cast<int>(std::lround(ce->entries.back().ordinal));
        }
        const LinearCEMap map = fit_linear_ce(*ce, lo, hi);
        std::optional<JShiftingParams> js;
        try {
            js = j_shifting_params(map);
        } catch (const ValidationError& e) {
            res.warnings.push_back(std::string("J-shifting parameters unavailable: ") + e.what());
        }
        const std::string map_path = resolve_out(cfg, map_name);
        write_text_atomic(map_path, map_to_json(map, js).dump(2) + "\n");
        res.outputs.push_back(map_path);

        if (!predicted_name.empty()) {
            // Predicted Regge trajectory over the real-energy image of the
            // fit window.
            const double e_lo = (map.a * map.lambda_min + map.b).real();
            const double e_hi = (map.a * map.lambda_max + map.b).real();
            const int n_pts = 101;
            Trajectory predicted;
            predicted.axis = Axis::AngularMomentum;
            predicted.label = ce->label + "_pred";
            for (int i = 0; i < n_pts; ++i) {
                const double e = e_lo + (e_hi - e_lo) * i / (n_pts - 1);
                TrajectoryEntry entry;
                entry.ordinal = e;
                entry.position = ce_to_regge(map, e) + Complex(0.5, 0.0);  // J -> lambda
                predicted.entries.push_back(entry);
            }
            std::ostringstream os;
            const Trajectory arr[] = {predicted};
            write_trajectory_csv(arr, os);
            const std::string pred_path = resolve_out(cfg, predicted_name);
            write_text_atomic(pred_path, os.str());
            res.outputs.push_back(pred_path);
        }
    });
}

}  // namespace cam::cli

// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
//
// cam: analytic continuation of S-matrix tables into the complex angular
// momentum and complex energy planes, Regge trajectory tracking, and
// Mulholland decomposition of integral cross sections.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "cam/cli.hpp"
#include "cam/common.hpp"

namespace {

struct GlobalArgs {
    std::string config_path;
    std::string out_dir;
    int jobs = 0;
    bool quiet = false;
};

cam::cli::RunConfig make_config(const GlobalArgs& g)
{
    cam::cli::RunConfig cfg = cam::cli::load_config(g.config_path);
    if (!g.out_dir.empty())
        cfg.out_dir = g.out_dir;
    if (g.jobs > 0)
        cfg.jobs = g.jobs;
    if (g.quiet)
        cfg.quiet = true;
    return cfg;
}

void add_global_options(CLI::App* app, GlobalArgs& g)
{
    app->add_option("--config", g.config_path,
                    "JSON config file (falls back to $CAM_REGGE_CONFIG)");
    app->add_option("--out-dir", g.out_dir, "Directory for outputs and manifests");
    app->add_option("--jobs", g.jobs, "Parallelism degree for per-energy work");
    app->add_flag("--quiet", g.quiet, "Suppress stderr diagnostics");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"cam-regge: complex angular momentum analysis of integral cross sections"};
    app.require_subcommand(1);
    GlobalArgs g;

    std::string spec_path, table_path, poles_path, traj_path, ce_path, label;
    std::string out_name, fano_name, predicted_name;
    int j_lo = 1, j_hi = 0;

    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic S-matrix table");
    add_global_options(synth, g);
    synth->add_option("spec", spec_path, "Pole-model spec JSON")->required();
    synth->add_option("-o,--output", out_name, "Output table CSV")->default_val("table.csv");

    CLI::App* poles_j = app.add_subcommand("poles-j", "Complex-J poles at each grid energy");
    add_global_options(poles_j, g);
    poles_j->add_option("table", table_path, "S-matrix table CSV")->required();
    poles_j->add_option("-o,--output", out_name, "Output pole CSV")->default_val("poles_j.csv");

    CLI::App* poles_e = app.add_subcommand("poles-e", "Complex-E poles at each integer J");
    add_global_options(poles_e, g);
    poles_e->add_option("table", table_path, "S-matrix table CSV")->required();
    poles_e->add_option("-o,--output", out_name, "Output pole CSV")->default_val("poles_e.csv");

    CLI::App* track = app.add_subcommand("track", "Link per-energy (or per-J) poles into trajectories");
    add_global_options(track, g);
    track->add_option("poles", poles_path, "Pole CSV from poles-j or poles-e")->required();
    track->add_option("-o,--output", out_name, "Output trajectory CSV")
        ->default_val("trajectories.csv");

    CLI::App* decompose = app.add_subcommand("decompose", "Mulholland decomposition of the ICS");
    add_global_options(decompose, g);
    decompose->add_option("table", table_path, "S-matrix table CSV")->required();
    decompose->add_option("--trajectories", traj_path, "Regge trajectory CSV (optional)");
    decompose->add_option("-o,--output", out_name, "Output decomposition CSV")
        ->default_val("decomposition.csv");
    decompose->add_option("--fano", fano_name, "Also write Fano features CSV");

    CLI::App* map_cmd = app.add_subcommand("map", "Fit the linear CE<->Lambda map and J-shifting parameters");
    add_global_options(map_cmd, g);
    map_cmd->add_option("ce_trajectory", ce_path, "CE trajectory CSV")->required();
    map_cmd->add_option("--label", label, "Trajectory label when the file holds several");
    map_cmd->add_option("--j-min", j_lo, "Fit window lower J");
    map_cmd->add_option("--j-max", j_hi, "Fit window upper J");
    map_cmd->add_option("-o,--output", out_name, "Output map JSON")->default_val("map.json");
    map_cmd->add_option("--predicted", predicted_name, "Predicted Regge trajectory CSV")
        ->default_val("predicted.csv");

    CLI11_PARSE(app, argc, argv);

    try {
        const cam::cli::RunConfig cfg = make_config(g);
        cam::cli::CmdResult res;
        if (synth->parsed())
            res = cam::cli::cmd_synth(cfg, spec_path, out_name);
        else if (poles_j->parsed())
            res = cam::cli::cmd_poles_j(cfg, table_path, out_name);
        else if (poles_e->parsed())
            res = cam::cli::cmd_poles_e(cfg, table_path, out_name);
        else if (track->parsed())
            res = cam::cli::cmd_track(cfg, poles_path, out_name);
        else if (decompose->parsed())
            res = cam::cli::cmd_decompose(cfg, table_path, traj_path, out_name, fano_name);
        else if (map_cmd->parsed())
            res = cam::cli::cmd_map(cfg, ce_path, label, j_lo, j_hi, out_name, predicted_name);

        if (!cfg.quiet) {
            for (const std::string& w : res.warnings)
                std::fprintf(stderr, "warning: %s\n", w.c_str());
            for (const std::string& o : res.outputs)
                std::fprintf(stderr, "wrote %s\n", o.c_str());
        }
        return res.exit_code;
    } catch (const cam::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

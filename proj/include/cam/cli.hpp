// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cam/mulholland.hpp"
#include "cam/pade.hpp"
#include "cam/smatrix.hpp"
#include "cam/trajectory.hpp"

namespace cam::cli {

struct PadeConfig {
    PadeOptions options;
    FilterPolicy filter_j;   // angular-momentum axis (upper half-plane)
    FilterPolicy filter_e;   // energy axis (lower half-plane)
    int j_window_size = 0;   // 0 = all J nodes; else moving window of this many
    int energy_max_nodes = 25;  // node cap for fixed-J energy-axis builds
    std::optional<double> energy_window_min;
    std::optional<double> energy_window_max;

    PadeConfig() {
        filter_e.half_plane = HalfPlane::Lower;
        filter_e.im_max = 20.0;  // meV scale on the energy axis
    }
};

struct RunConfig {
    PadeConfig pade;
    TrackingPolicy tracking;
    std::map<std::string, std::string> label_merge;
    std::vector<std::string> smooth_labels;
    double quad_rel_tol = 1e-8;
    double unitarity_slack = 1e-3;
    std::string out_dir = ".";
    int jobs = 1;
    bool quiet = false;

    void validate() const;
};

nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);
// Empty path: defaults, unless the CAM_REGGE_CONFIG environment variable
// names a config file.
RunConfig load_config(const std::string& path);

struct CmdResult {
    int exit_code = 0;
    std::vector<std::string> warnings;
    std::vector<std::string> notes;  // informational (classification, smoothing)
    std::vector<std::string> outputs;
};

// Subcommand bodies. Each validates inputs, writes outputs atomically and a
// <command>_manifest.json in out_dir, and maps errors to exit codes
// (1 validation, 2 numerical).
CmdResult cmd_synth(const RunConfig& cfg, const std::string& spec_path,
                    const std::string& out_name);
CmdResult cmd_poles_j(const RunConfig& cfg, const std::string& table_path,
                      const std::string& out_name);
CmdResult cmd_poles_e(const RunConfig& cfg, const std::string& table_path,
                      const std::string& out_name);
CmdResult cmd_track(const RunConfig& cfg, const std::string& poles_path,
                    const std::string& out_name);
CmdResult cmd_decompose(const RunConfig& cfg, const std::string& table_path,
                        const std::string& traj_path,  // empty: background only
                        const std::string& out_name, const std::string& fano_name);
CmdResult cmd_map(const RunConfig& cfg, const std::string& ce_traj_path,
                  const std::string& label,  // empty: single-trajectory input expected
                  int j_lo, int j_hi, const std::string& map_name,
                  const std::string& predicted_name);

// Per-energy angular-momentum approximants for a table (shared by poles-j and
// decompose). Energies whose build fails are returned empty with a warning.
std::vector<RationalApproximant> build_per_energy_approximants(
    const SMatrixTable& table, const RunConfig& cfg, std::vector<std::string>& warnings);

void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace cam::cli

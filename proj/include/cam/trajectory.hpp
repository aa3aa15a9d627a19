// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cam/pade.hpp"

namespace cam {

// One tracked pole sample. For Regge trajectories `ordinal` is the collision
// energy [meV] and `position` is lambda; for CE trajectories `ordinal` is the
// integer J and `position` the complex pole energy [meV].
struct TrajectoryEntry {
    double ordinal = 0.0;
    Complex position;
    Complex residue;
    Complex s_conj;        // S*(E, lambda*); zero when unknown (e.g. CSV input)
    bool smoothed = false;
    bool after_gap = false;
};

struct GapInterval {
    double first_missing = 0.0;
    double last_missing = 0.0;
};

struct Trajectory {
    Axis axis = Axis::AngularMomentum;
    std::string label;
    std::vector<TrajectoryEntry> entries;  // sorted by ordinal, one per grid point
    std::vector<GapInterval> gaps;
};

using ReggeTrajectory = Trajectory;  // axis == AngularMomentum
using CETrajectory = Trajectory;     // axis == Energy

struct CandidatePole {
    Complex position;
    Complex residue;
    Complex s_conj;
};

struct TrackingPolicy {
    double match_radius = 0.5;  // max |candidate - predicted| for continuation
    int gap_max = 20;           // max consecutive missing grid points
    double trend_tol = 0.01;    // Im drift tolerance for typing
    double near_axis_max = 1.0; // type-II trajectories must start this close to the axis
    int trend_window = 5;       // moving-average window for typing
};

// Greedy nearest-neighbour linking with linear velocity prediction.
// Deterministic: candidates are canonicalized, ties break by smaller distance
// then larger |residue|. Labels are "R01", "R02", ... in seeding order.
std::vector<Trajectory> track(const std::map<double, std::vector<CandidatePole>>& per_energy,
                              const TrackingPolicy& policy = {});

// Same machinery with J as the ordering variable; labels "C01", ...
std::vector<Trajectory> track_ce(const std::map<double, std::vector<CandidatePole>>& per_j,
                                 const TrackingPolicy& policy = {});

enum class TrajectoryType { TypeI, TypeII, Undetermined };
const char* trajectory_type_name(TrajectoryType t);

// Im-position trend classifier: interior minimum preceded by a decreasing
// segment -> type I; non-decreasing from a near-axis start -> type II.
TrajectoryType classify_type(const Trajectory& traj, const TrackingPolicy& policy = {});

// Replaces Im(position) between integer crossings of Re J by a monotone
// piecewise-cubic through the crossing values; affected entries are flagged.
// Intended for weak near-axis trajectories whose Im fluctuates off-crossing.
Trajectory smooth_imaginary_by_crossings(const Trajectory& traj);

// Renames labels; a collision merges entry lists (sorted, duplicate ordinals
// rejected) and records the seam gap.
void apply_label_merge(std::vector<Trajectory>& trajectories,
                       const std::map<std::string, std::string>& merges);

// CSV: label, E_meV, re_J, im_J, re_residue, im_residue, smoothed_flag, gap_flag
// (J = lambda - 1/2 on output); CE axis analogous with J, re_E, im_E.
void write_trajectory_csv(std::span<const Trajectory> trajectories, std::ostream& out);
std::vector<Trajectory> read_trajectory_csv(std::istream& in,
                                            const std::string& source_name = "<stream>");

}  // namespace cam

// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#include "cam/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "cam/numerics.hpp"
#include "cam/textio.hpp"

namespace cam {

const char* trajectory_type_name(TrajectoryType t)
{
    switch (t) {
    case TrajectoryType::TypeI:
        return "type-I";
    case TrajectoryType::TypeII:
        return "type-II";
    default:
        return "undetermined";
    }
}

namespace {

struct OpenTrack {
    Trajectory traj;
    int misses = 0;          // consecutive grid points without a match
    double miss_first = 0.0; // first missing ordinal of the current run
    double miss_last = 0.0;
    int seed_rank = 0;       // creation order, for deterministic labels
};

Complex predict(const OpenTrack& t, double ordinal)
{
    const auto& e = t.traj.entries;
    if (e.size() < 2)
        return e.back().position;
    const TrajectoryEntry& last = e[e.size() - 1];
    const TrajectoryEntry& prev = e[e.size() - 2];
    if (last.ordinal == prev.ordinal)
        return last.position;
    const Complex velocity = (last.position - prev.position) / (last.ordinal - prev.ordinal);
    return last.position + velocity * (ordinal - last.ordinal);
}

std::string make_label(Axis axis, int rank)
{
    std::ostringstream os;
    os << (axis == Axis::AngularMomentum ? "R" : "C");
    if (rank < 9)
        os << "0";
    os << (rank + 1);
    return os.str();
}

std::vector<Trajectory> track_impl(const std::map<double, std::vector<CandidatePole>>& per_ordinal,
                                   const TrackingPolicy& policy, Axis axis)
{
    std::vector<OpenTrack> open;
    std::vector<Trajectory> closed;
    int seeded = 0;

    auto close_track = [&](OpenTrack& t) { closed.push_back(std::move(t.traj)); };

    for (const auto& [ordinal, pole_list] : per_ordinal) {
        // Canonical candidate order makes the assignment independent of the
        // caller's list order.
        std::vector<CandidatePole> candidates(pole_list.begin(), pole_list.end());
        std::sort(candidates.begin(), candidates.end(),
                  [](const CandidatePole& a, const CandidatePole& b) {
                      if (a.position.real() != b.position.real())
                          return a.position.real() < b.position.real();
                      return a.position.imag() < b.position.imag();
                  });

        struct Pair {
            double dist;
            double neg_abs_residue;
            std::size_t track_idx;
            std::size_t cand_idx;
        };
        std::vector<Pair> pairs;
        for (std::size_t ti = 0; ti < open.size(); ++ti) {
            const Complex pred = predict(open[ti], ordinal);
            for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
                const double d = std::abs(candidates[ci].position - pred);
                if (d <= policy.match_radius)
                    pairs.push_back({d, -std::abs(candidates[ci].residue), ti, ci});
            }
        }
        std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
            if (a.dist != b.dist)
                return a.dist < b.dist;
            if (a.neg_abs_residue != b.neg_abs_residue)
                return a.neg_abs_residue < b.neg_abs_residue;
            if (a.track_idx != b.track_idx)
                return a.track_idx < b.track_idx;
            return a.cand_idx < b.cand_idx;
        });

        std::vector<bool> track_taken(open.size(), false);
        std::vector<bool> cand_taken(candidates.size(), false);
        for (const Pair& p : pairs) {
            if (track_taken[p.track_idx] || cand_taken[p.cand_idx])
                continue;
            track_taken[p.track_idx] = true;
            cand_taken[p.cand_idx] = true;
            OpenTrack& t = open[p.track_idx];
            TrajectoryEntry entry;
            entry.ordinal = ordinal;
            entry.position = candidates[p.cand_idx].position;
            entry.residue = candidates[p.cand_idx].residue;
            entry.s_conj = candidates[p.cand_idx].s_conj;
            if (t.misses > 0) {
                t.traj.gaps.push_back({t.miss_first, t.miss_last});
                entry.after_gap = true;
                t.misses = 0;
            }
            t.traj.entries.push_back(entry);
        }

        // Unmatched tracks accumulate misses; beyond gap_max they close.
        std::vector<OpenTrack> still_open;
        for (std::size_t ti = 0; ti < open.size(); ++ti) {
            OpenTrack& t = open[ti];
            if (!track_taken[ti]) {
                if (t.misses == 0)
                    t.miss_first = ordinal;
                t.miss_last = ordinal;
                ++t.misses;
                if (t.misses > policy.gap_max) {
                    close_track(t);
                    continue;
                }
            }
            still_open.push_back(std::move(t));
        }
        open = std::move(still_open);

        for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
            if (cand_taken[ci])
                continue;
            OpenTrack t;
            t.traj.axis = axis;
            t.traj.label = make_label(axis, seeded);
            t.seed_rank = seeded++;
            TrajectoryEntry entry;
            entry.ordinal = ordinal;
            entry.position = candidates[ci].position;
            entry.residue = candidates[ci].residue;
            entry.s_conj = candidates[ci].s_conj;
            t.traj.entries.push_back(entry);
            open.push_back(std::move(t));
        }
    }
    for (OpenTrack& t : open)
        close_track(t);

    std::sort(closed.begin(), closed.end(),
              [](const Trajectory& a, const Trajectory& b) { return a.label < b.label; });
    return closed;
}

}  // namespace

std::vector<Trajectory> track(const std::map<double, std::vector<CandidatePole>>& per_energy,
                              const TrackingPolicy& policy)
{
    return track_impl(per_energy, policy, Axis::AngularMomentum);
}

std::vector<Trajectory> track_ce(const std::map<double, std::vector<CandidatePole>>& per_j,
                                 const TrackingPolicy& policy)
{
    return track_impl(per_j, policy, Axis::Energy);
}

TrajectoryType classify_type(const Trajectory& traj, const TrackingPolicy& policy)
{
    if (traj.entries.size() < 5)
        return TrajectoryType::Undetermined;
    std::vector<double> im;
    im.reserve(traj.entries.size());
    for (const TrajectoryEntry& e : traj.entries)
        im.push_back(e.position.imag());
    const std::vector<double> sm = moving_average(im, policy.trend_window);

    const auto min_it = std::min_element(sm.begin(), sm.end());
    const std::size_t m = static_cast<std::size_t>(min_it - sm.begin());
    const double tol = policy.trend_tol;

    // Interior minimum with a genuine fall before and rise after: the state
    // had to be lowered first.
    if (m > 0 && m + 1 < sm.size() && sm.front() - sm[m] > tol && sm.back() - sm[m] > tol)
        return TrajectoryType::TypeI;

    // Non-decreasing within tolerance from a near-axis start.
    double run_max = sm.front();
    double max_drawdown = 0.0;
    for (double v : sm) {
        run_max = std::max(run_max, v);
        max_drawdown = std::max(max_drawdown, run_max - v);
    }
    if (max_drawdown <= tol && sm.front() <= policy.near_axis_max)
        return TrajectoryType::TypeII;

    return TrajectoryType::Undetermined;
}

Trajectory smooth_imaginary_by_crossings(const Trajectory& traj)
{
    Trajectory out = traj;
    if (traj.entries.size() < 2)
        return out;

    // Integer crossings of Re J = Re lambda - 1/2 located by linear interpolation.
    std::vector<double> cross_e, cross_im;
    for (std::size_t i = 0; i + 1 < traj.entries.size(); ++i) {
        const double r0 = traj.entries[i].position.real() - 0.5;
        const double r1 = traj.entries[i + 1].position.real() - 0.5;
        const double lo = std::min(r0, r1), hi = std::max(r0, r1);
        for (int k = static_cast<int>(std::ceil(lo)); k <= static_cast<int>(std::floor(hi)); ++k) {
            if (r1 == r0)
                continue;
            const double t = (k - r0) / (r1 - r0);
            if (t < 0.0 || t > 1.0)
                continue;
            const double e = traj.entries[i].ordinal +
                             t * (traj.entries[i + 1].ordinal - traj.entries[i].ordinal);
            const double imv = traj.entries[i].position.imag() +
                               t * (traj.entries[i + 1].position.imag() -
                                    traj.entries[i].position.imag());
            if (!cross_e.empty() && !(e > cross_e.back() + 1e-12))
                continue;
            cross_e.push_back(e);
            cross_im.push_back(imv);
        }
    }
    if (cross_e.size() < 2)
        return out;

    const Pchip interp(cross_e, cross_im);
    for (TrajectoryEntry& entry : out.entries) {
        if (entry.ordinal < cross_e.front() || entry.ordinal > cross_e.back())
            continue;
        entry.position = Complex(entry.position.real(), interp(entry.ordinal));
        entry.smoothed = true;
    }
    return out;
}

void apply_label_merge(std::vector<Trajectory>& trajectories,
                       const std::map<std::string, std::string>& merges)
{
    if (merges.empty())
        return;
    for (Trajectory& t : trajectories) {
        auto it = merges.find(t.label);
        if (it != merges.end())
            t.label = it->second;
    }
    std::vector<Trajectory> merged;
    for (Trajectory& t : trajectories) {
        auto dst = std::find_if(merged.begin(), merged.end(),
                                [&](const Trajectory& m) { return m.label == t.label; });
        if (dst == merged.end()) {
            merged.push_back(std::move(t));
            continue;
        }
        if (dst->axis != t.axis)
            throw ValidationError("label merge across axes: " + t.label);
        const double seam_lo = std::min(dst->entries.back().ordinal, t.entries.back().ordinal);
        const double seam_hi = std::max(dst->entries.front().ordinal, t.entries.front().ordinal);
        dst->entries.insert(dst->entries.end(), t.entries.begin(), t.entries.end());
        std::sort(dst->entries.begin(), dst->entries.end(),
                  [](const TrajectoryEntry& a, const TrajectoryEntry& b) {
                      return a.ordinal < b.ordinal;
                  });
        for (std::size_t i = 1; i < dst->entries.size(); ++i)
            if (dst->entries[i].ordinal == dst->entries[i - 1].ordinal)
                throw ValidationError("label merge produces duplicate ordinals for " + dst->label);
        dst->gaps.insert(dst->gaps.end(), t.gaps.begin(), t.gaps.end());
        if (seam_lo < seam_hi)
            dst->gaps.push_back({seam_lo, seam_hi});
        std::sort(dst->gaps.begin(), dst->gaps.end(),
                  [](const GapInterval& a, const GapInterval& b) {
                      return a.first_missing < b.first_missing;
                  });
    }
    trajectories = std::move(merged);
}

void write_trajectory_csv(std::span<const Trajectory> trajectories, std::ostream& out)
{
    const bool regge = trajectories.empty() || trajectories.front().axis == Axis::AngularMomentum;
    if (regge)
        out << "label,E_meV,re_J,im_J,re_residue,im_residue,smoothed_flag,gap_flag\n";
    else
        out << "label,J,re_E,im_E,re_residue,im_residue,smoothed_flag,gap_flag\n";
    for (const Trajectory& t : trajectories) {
        for (const TrajectoryEntry& e : t.entries) {
            // Regge positions are exported in the J variable (lambda - 1/2).
            const Complex pos =
                t.axis == Axis::AngularMomentum ? e.position - Complex(0.5, 0.0) : e.position;
            out << t.label << "," << format_double(e.ordinal) << "," << format_double(pos.real())
                << "," << format_double(pos.imag()) << "," << format_double(e.residue.real())
                << "," << format_double(e.residue.imag()) << "," << (e.smoothed ? 1 : 0) << ","
                << (e.after_gap ? 1 : 0) << "\n";
        }
    }
}

std::vector<Trajectory> read_trajectory_csv(std::istream& in, const std::string& source_name)
{
    std::vector<Trajectory> out;
    Axis axis = Axis::AngularMomentum;
    bool have_header = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        const std::string where = source_name + ":" + std::to_string(line_no);
        if (t.empty() || t[0] == '#')
            continue;
        if (t.rfind("label,", 0) == 0) {
            axis = t.rfind("label,E_meV", 0) == 0 ? Axis::AngularMomentum : Axis::Energy;
            have_header = true;
            continue;
        }
        if (!have_header)
            throw ValidationError(source_name + ": missing trajectory CSV header");
        const auto f = split_csv_line(t);
        if (f.size() != 8)
            throw ValidationError("expected 8 columns at " + where);
        const std::string& label = f[0];
        TrajectoryEntry entry;
        entry.ordinal = parse_double(f[1], where);
        Complex pos(parse_double(f[2], where), parse_double(f[3], where));
        if (axis == Axis::AngularMomentum)
            pos += Complex(0.5, 0.0);  // J column back to lambda
        entry.position = pos;
        entry.residue = Complex(parse_double(f[4], where), parse_double(f[5], where));
        entry.smoothed = parse_int(f[6], where) != 0;
        entry.after_gap = parse_int(f[7], where) != 0;

        auto dst = std::find_if(out.begin(), out.end(),
                                [&](const Trajectory& tr) { return tr.label == label; });
        if (dst == out.end()) {
            Trajectory tr;
            tr.axis = axis;
            tr.label = label;
            out.push_back(tr);
            dst = out.end() - 1;
        }
        dst->entries.push_back(entry);
    }
    for (Trajectory& t : out) {
        std::sort(t.entries.begin(), t.entries.end(),
                  [](const TrajectoryEntry& a, const TrajectoryEntry& b) {
                      return a.ordinal < b.ordinal;
                  });
        for (std::size_t i = 1; i < t.entries.size(); ++i)
            if (t.entries[i].ordinal == t.entries[i - 1].ordinal)
                throw ValidationError("duplicate ordinal in trajectory " + t.label);
        if (t.axis == Axis::Energy)
            for (const TrajectoryEntry& e : t.entries)
                if (!(e.position.imag() < 0.0))
                    throw ValidationError("CE trajectory " + t.label +
                                          " has a pole with Im E >= 0");
    }
    return out;
}

}  // namespace cam

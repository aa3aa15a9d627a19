// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cam/trajectory.hpp"

using namespace cam;

namespace {

using PoleMap = std::map<double, std::vector<CandidatePole>>;

CandidatePole cand(Complex pos, Complex res = Complex(0.01, 0.0))
{
    return {pos, res, Complex(1.0, 0.0)};
}

}  // namespace

TEST_CASE("one smoothly drifting pole gives one trajectory without gaps")
{
    PoleMap m;
    for (int i = 0; i < 30; ++i) {
        const double e = 58.0 + 0.1 * i;
        m[e] = {cand(Complex(5.0 + 0.08 * i, 0.2 + 0.002 * i))};
    }
    const auto trajs = track(m);
    REQUIRE(trajs.size() == 1);
    CHECK(trajs[0].entries.size() == 30);
    CHECK(trajs[0].gaps.empty());
    CHECK(trajs[0].label == "R01");
    for (std::size_t i = 1; i < trajs[0].entries.size(); ++i)
        CHECK(trajs[0].entries[i].ordinal > trajs[0].entries[i - 1].ordinal);
}

TEST_CASE("two trajectories crossing in Re lambda stay separated by the full complex distance")
{
    std::mt19937 rng(31415);
    std::uniform_real_distribution<double> u(-0.02, 0.02);
    for (int trial = 0; trial < 25; ++trial) {
        PoleMap m;
        const double im_a = 0.15, im_b = 1.2;  // well separated vertically
        for (int i = 0; i < 60; ++i) {
            const double e = 58.0 + 0.1 * i;
            // A rises through B's falling real part; they cross near i=30
            const Complex a(4.0 + 0.10 * i + u(rng), im_a + u(rng) * 0.1);
            const Complex b(10.0 - 0.10 * i + u(rng), im_b + u(rng) * 0.1);
            m[e] = {cand(a, Complex(0.02, 0.0)), cand(b, Complex(0.05, 0.0))};
        }
        const auto trajs = track(m);
        REQUIRE(trajs.size() == 2);
        for (const auto& t : trajs) {
            REQUIRE(t.entries.size() == 60);
            // label constancy: each trajectory stays on its own Im level
            const double im0 = t.entries.front().position.imag();
            for (const auto& e : t.entries)
                CHECK(std::abs(e.position.imag() - im0) < 0.5);
        }
    }
}

TEST_CASE("a 3-point interior gap is bridged into a single trajectory")
{
    PoleMap m;
    for (int i = 0; i < 20; ++i) {
        const double e = 58.0 + 0.1 * i;
        if (i >= 8 && i <= 10) {
            m[e] = {};  // pole lost for 3 grid points
            continue;
        }
        m[e] = {cand(Complex(5.0 + 0.05 * i, 0.3))};
    }
    const auto trajs = track(m);
    REQUIRE(trajs.size() == 1);
    CHECK(trajs[0].entries.size() == 17);
    REQUIRE(trajs[0].gaps.size() == 1);
    CHECK(trajs[0].gaps[0].first_missing == doctest::Approx(58.8));
    CHECK(trajs[0].gaps[0].last_missing == doctest::Approx(59.0));
    // the entry right after the gap carries the flag
    bool flagged = false;
    for (const auto& e : trajs[0].entries)
        if (e.after_gap)
            flagged = true;
    CHECK(flagged);
}

TEST_CASE("a gap longer than gap_max closes the trajectory")
{
    TrackingPolicy policy;
    policy.gap_max = 3;
    PoleMap m;
    for (int i = 0; i < 20; ++i) {
        const double e = 58.0 + 0.1 * i;
        if (i >= 5 && i < 10) {
            m[e] = {};  // 5 missing points > gap_max = 3
            continue;
        }
        m[e] = {cand(Complex(5.0 + 0.05 * i, 0.3))};
    }
    const auto trajs = track(m, policy);
    REQUIRE(trajs.size() == 2);
}

TEST_CASE("tracking is invariant under permutation of each energy's pole list")
{
    PoleMap fwd, rev;
    for (int i = 0; i < 25; ++i) {
        const double e = 58.0 + 0.1 * i;
        const auto a = cand(Complex(4.0 + 0.05 * i, 0.2), Complex(0.02, 0));
        const auto b = cand(Complex(9.0 - 0.03 * i, 0.8), Complex(0.04, 0));
        fwd[e] = {a, b};
        rev[e] = {b, a};
    }
    const auto t1 = track(fwd);
    const auto t2 = track(rev);
    REQUIRE(t1.size() == t2.size());
    for (std::size_t k = 0; k < t1.size(); ++k) {
        REQUIRE(t1[k].entries.size() == t2[k].entries.size());
        for (std::size_t i = 0; i < t1[k].entries.size(); ++i)
            CHECK(t1[k].entries[i].position == t2[k].entries[i].position);
    }
}

TEST_CASE("tracking two half-grids matches tracking the full grid when no gap straddles the seam")
{
    PoleMap full, lo, hi;
    for (int i = 0; i < 40; ++i) {
        const double e = 58.0 + 0.1 * i;
        const std::vector<CandidatePole> list = {cand(Complex(4.0 + 0.05 * i, 0.2)),
                                                 cand(Complex(12.0 - 0.04 * i, 1.1))};
        full[e] = list;
        (i < 20 ? lo : hi)[e] = list;
    }
    const auto t_full = track(full);
    const auto t_lo = track(lo);
    const auto t_hi = track(hi);
    REQUIRE(t_full.size() == 2);
    REQUIRE(t_lo.size() == 2);
    REQUIRE(t_hi.size() == 2);
    for (const auto& tf : t_full) {
        // find the halves whose entries sit on tf and concatenate
        std::vector<TrajectoryEntry> joined;
        for (const auto& part : {t_lo, t_hi}) {
            for (const auto& tp : part) {
                if (std::abs(tp.entries.front().position -
                             tf.entries[joined.size()].position) < 1e-12) {
                    joined.insert(joined.end(), tp.entries.begin(), tp.entries.end());
                    break;
                }
            }
        }
        REQUIRE(joined.size() == tf.entries.size());
        for (std::size_t i = 0; i < joined.size(); ++i)
            CHECK(joined[i].position == tf.entries[i].position);
    }
}

TEST_CASE("classify_type: monotone rising Im is type II")
{
    Trajectory t;
    t.axis = Axis::AngularMomentum;
    for (int i = 0; i < 30; ++i)
        t.entries.push_back({58.0 + 0.1 * i, Complex(5.0 + 0.1 * i, 0.1 + 0.02 * i),
                             Complex(0.01, 0), Complex(1, 0), false, false});
    CHECK(classify_type(t) == TrajectoryType::TypeII);
}

TEST_CASE("classify_type: V-shaped Im with interior minimum is type I")
{
    Trajectory t;
    t.axis = Axis::AngularMomentum;
    for (int i = 0; i < 40; ++i) {
        const double e = 58.0 + 0.1 * i;
        const double im = i < 20 ? 0.5 - 0.03 * i : 0.5 - 0.03 * 20 + 0.03 * (i - 20);
        t.entries.push_back({e, Complex(5.0 + 0.1 * i, im), Complex(0.01, 0), Complex(1, 0),
                             false, false});
    }
    CHECK(classify_type(t) == TrajectoryType::TypeI);
}

TEST_CASE("classify_type: too few entries is undetermined")
{
    Trajectory t;
    t.axis = Axis::AngularMomentum;
    for (int i = 0; i < 4; ++i)
        t.entries.push_back({58.0 + 0.1 * i, Complex(5.0, 0.1), Complex(0.01, 0), Complex(1, 0),
                             false, false});
    CHECK(classify_type(t) == TrajectoryType::Undetermined);
}

TEST_CASE("classify_type is invariant under energy shift and positive rescale")
{
    Trajectory base;
    base.axis = Axis::AngularMomentum;
    std::mt19937 rng(2718);
    std::uniform_real_distribution<double> u(-0.001, 0.001);
    for (int i = 0; i < 30; ++i)
        base.entries.push_back({58.0 + 0.1 * i, Complex(5.0 + 0.1 * i, 0.1 + 0.015 * i + u(rng)),
                                Complex(0.01, 0), Complex(1, 0), false, false});
    const TrajectoryType want = classify_type(base);
    Trajectory shifted = base, scaled = base;
    for (auto& e : shifted.entries)
        e.ordinal += 1234.5;
    for (auto& e : scaled.entries)
        e.ordinal *= 42.0;
    CHECK(classify_type(shifted) == want);
    CHECK(classify_type(scaled) == want);
}

TEST_CASE("track_ce: single CE pole drifting quadratically in J")
{
    PoleMap m;
    for (int j = 0; j <= 20; ++j)
        m[j] = {cand(Complex(60.0 + 0.01 * j * (j + 1.0), -0.1))};
    TrackingPolicy policy;
    policy.match_radius = 2.0;  // E-plane scale
    const auto trajs = track_ce(m, policy);
    REQUIRE(trajs.size() == 1);
    CHECK(trajs[0].axis == Axis::Energy);
    CHECK(trajs[0].label == "C01");
    CHECK(trajs[0].entries.size() == 21);
}

TEST_CASE("track_ce: resonance-A-style window spans J=17..27 in one trajectory")
{
    PoleMap m;
    for (int j = 17; j <= 27; ++j)
        m[j] = {cand(Complex(60.0 + j * (j + 1.0) / 100.0, -0.1))};
    TrackingPolicy policy;
    policy.match_radius = 2.0;
    const auto trajs = track_ce(m, policy);
    REQUIRE(trajs.size() == 1);
    CHECK(trajs[0].entries.front().ordinal == doctest::Approx(17.0));
    CHECK(trajs[0].entries.back().ordinal == doctest::Approx(27.0));
}

TEST_CASE("track_ce: two CE poles well separated in Im E give two trajectories")
{
    PoleMap m;
    for (int j = 0; j <= 15; ++j)
        m[j] = {cand(Complex(60.0 + 0.05 * j, -0.05)), cand(Complex(60.5 + 0.05 * j, -2.0))};
    TrackingPolicy policy;
    policy.match_radius = 1.0;
    const auto trajs = track_ce(m, policy);
    REQUIRE(trajs.size() == 2);
    for (const auto& t : trajs)
        CHECK(t.entries.size() == 16);
}

TEST_CASE("smoothing replaces off-crossing Im wobble by the pchip through crossings")
{
    Trajectory t;
    t.axis = Axis::AngularMomentum;
    std::mt19937 rng(1007);
    std::uniform_real_distribution<double> wobble(-0.2, 0.2);
    // Re J passes through integers 5..9; Im is 0.1 at crossings, noisy between
    for (int i = 0; i <= 200; ++i) {
        const double e = 58.0 + 0.025 * i;
        const double re_j = 4.8 + 0.9 * (e - 58.0);
        const double frac = re_j - std::floor(re_j);
        const bool near_integer = frac < 0.05 || frac > 0.95;
        const double im = 0.1 + (near_integer ? 0.0 : wobble(rng));
        t.entries.push_back({e, Complex(re_j + 0.5, im), Complex(0.01, 0), Complex(1, 0),
                             false, false});
    }
    const Trajectory s = smooth_imaginary_by_crossings(t);
    int smoothed_count = 0;
    for (const auto& e : s.entries) {
        if (!e.smoothed)
            continue;
        ++smoothed_count;
        CHECK(e.position.imag() == doctest::Approx(0.1).epsilon(0.25));
    }
    CHECK(smoothed_count > 100);
}

TEST_CASE("label merge renames and joins disjoint parts with a seam gap")
{
    PoleMap lo, hi;
    for (int i = 0; i < 10; ++i)
        lo[58.0 + 0.1 * i] = {cand(Complex(5.0 + 0.05 * i, 0.3))};
    for (int i = 15; i < 25; ++i)
        hi[58.0 + 0.1 * i] = {cand(Complex(5.0 + 0.05 * i, 0.3))};
    auto t1 = track(lo);
    auto t2 = track(hi);
    REQUIRE(t1.size() == 1);
    REQUIRE(t2.size() == 1);
    t2[0].label = "R02";
    std::vector<Trajectory> all = {t1[0], t2[0]};
    apply_label_merge(all, {{"R01", "D2"}, {"R02", "D2"}});
    REQUIRE(all.size() == 1);
    CHECK(all[0].label == "D2");
    CHECK(all[0].entries.size() == 20);
    REQUIRE(!all[0].gaps.empty());
}

TEST_CASE("trajectory CSV round trip, both axes")
{
    PoleMap m;
    for (int i = 0; i < 12; ++i)
        m[58.0 + 0.1 * i] = {cand(Complex(5.0 + 0.05 * i, 0.3), Complex(0.01, -0.02))};
    auto regge = track(m);

    PoleMap mc;
    for (int j = 3; j <= 14; ++j)
        mc[j] = {cand(Complex(60.0 + 0.3 * j, -0.2))};
    TrackingPolicy pol;
    pol.match_radius = 1.0;
    auto ce = track_ce(mc, pol);

    for (const auto& trajs : {regge, ce}) {
        std::ostringstream os;
        write_trajectory_csv(trajs, os);
        std::istringstream is(os.str());
        const auto back = read_trajectory_csv(is);
        REQUIRE(back.size() == trajs.size());
        CHECK(back[0].axis == trajs[0].axis);
        REQUIRE(back[0].entries.size() == trajs[0].entries.size());
        for (std::size_t i = 0; i < back[0].entries.size(); ++i) {
            CHECK(back[0].entries[i].ordinal == trajs[0].entries[i].ordinal);
            CHECK(std::abs(back[0].entries[i].position - trajs[0].entries[i].position) < 1e-15);
            CHECK(back[0].entries[i].residue == trajs[0].entries[i].residue);
        }
    }
}

TEST_CASE("CE trajectories with poles in the upper half-plane are rejected on read")
{
    std::string csv = "label,J,re_E,im_E,re_residue,im_residue,smoothed_flag,gap_flag\n";
    csv += "C01,3,60.0,0.5,0.0,0.0,0,0\n";
    std::istringstream is(csv);
    CHECK_THROWS_WITH_AS(read_trajectory_csv(is), doctest::Contains("Im E"), ValidationError);
}

// Copyright 2026 the cam-regge authors
// SPDX-License-Identifier: Apache-2.0
#include "cam/pade.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "cam/textio.hpp"

namespace cam {

const char* axis_name(Axis a)
{
    return a == Axis::AngularMomentum ? "J" : "E";
}

Axis axis_from_name(const std::string& s)
{
    if (s == "J")
        return Axis::AngularMomentum;
    if (s == "E")
        return Axis::Energy;
    throw ValidationError("unknown axis '" + s + "'");
}

namespace {

// Thiele forward recurrence A_k = b_k A_{k-1} + (z - x_{k-1}) A_{k-2} with
// power-of-two rescaling against overflow.
Complex evaluate_cf(std::span<const Complex> b, std::span<const double> x, Complex z)
{
    if (b.empty())
        throw NumericalError("empty continued fraction");
    Complex a_prev = 1.0, a_cur = b[0];
    Complex b_prev = 0.0, b_cur = 1.0;
    for (std::size_t k = 1; k < b.size(); ++k) {
        const Complex shift = z - x[k - 1];
        Complex a_next = b[k] * a_cur + shift * a_prev;
        Complex b_next = b[k] * b_cur + shift * b_prev;
        const double m = std::max(std::abs(a_next), std::abs(b_next));
        if (m > 1e140 || (m > 0.0 && m < 1e-140)) {
            const double s = std::ldexp(1.0, -std::ilogb(m));
            a_next *= s;
            b_next *= s;
            a_cur *= s;
            b_cur *= s;
        }
        a_prev = a_cur;
        a_cur = a_next;
        b_prev = b_cur;
        b_cur = b_next;
    }
    return a_cur / b_cur;
}

struct CfBuild {
    std::vector<int> order;       // permutation into the sample list
    std::vector<Complex> coeffs;  // b_k at the ordered nodes
};

double interp_scale(double f_abs, double f_max)
{
    return std::max(f_abs, 1e-6 * f_max);
}

// One construction pass. `pivot` picks the next node among the remaining
// ones given the current inverse-difference values; returns nullopt when a
// division degenerates into a non-finite coefficient.
template <typename PivotFn>
std::optional<CfBuild> build_attempt(std::span<const Sample> s, double f_max,
                                     const PadeOptions& opts, PivotFn pivot)
{
    const std::size_t n = s.size();
    std::vector<int> remaining(n);
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<Complex> phi(n);
    for (std::size_t i = 0; i < n; ++i)
        phi[i] = s[i].f;

    CfBuild out;
    std::vector<double> used_x;
    while (!remaining.empty()) {
        const std::size_t pick = pivot(remaining, phi);
        const int idx = remaining[pick];
        const Complex bk = phi[static_cast<std::size_t>(idx)];
        if (!std::isfinite(std::abs(bk)))
            return std::nullopt;
        out.order.push_back(idx);
        out.coeffs.push_back(bk);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
        if (remaining.empty())
            break;

        // Early termination: if the partial fraction already reproduces every
        // remaining node, the data is rational of lower degree.
        bool done = true;
        for (int r : remaining) {
            const Complex v = evaluate_cf(out.coeffs, used_x, s[static_cast<std::size_t>(r)].x);
            const double err = std::abs(v - s[static_cast<std::size_t>(r)].f);
            if (!(err <= opts.trunc_rel_tol *
                             interp_scale(std::abs(s[static_cast<std::size_t>(r)].f), f_max))) {
                done = false;
                break;
            }
        }
        if (done)
            break;

        const double xk = s[static_cast<std::size_t>(idx)].x;
        used_x.push_back(xk);
        for (int r : remaining) {
            const std::size_t ri = static_cast<std::size_t>(r);
            const Complex diff = phi[ri] - bk;
            const Complex next = (s[ri].x - xk) / diff;
            if (!std::isfinite(std::abs(next)))
                return std::nullopt;
            phi[ri] = next;
        }
    }
    return out;
}

std::size_t greedy_maximin_pivot(const std::vector<int>& remaining, const std::vector<Complex>& phi)
{
    if (remaining.size() == 1)
        return 0;
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t c = 0; c < remaining.size(); ++c) {
        double dmin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            if (i == c)
                continue;
            dmin = std::min(dmin, std::abs(phi[static_cast<std::size_t>(remaining[i])] -
                                           phi[static_cast<std::size_t>(remaining[c])]));
        }
        if (dmin > best_score) {
            best_score = dmin;
            best = c;
        }
    }
    return best;
}

// num/den polynomials by the same three-term recurrence over polynomials,
// with pairwise power-of-two rescaling (exact in binary floating point).
void derive_polys(const CfBuild& cf, std::span<const Sample> s, Poly& num, Poly& den)
{
    Poly a_prev{Complex(1.0, 0.0)}, a_cur{cf.coeffs[0]};
    Poly b_prev, b_cur{Complex(1.0, 0.0)};
    auto scale_all = [](std::initializer_list<Poly*> polys, double factor) {
        for (Poly* p : polys)
            for (Complex& c : *p)
                c *= factor;
    };
    for (std::size_t k = 1; k < cf.coeffs.size(); ++k) {
        const double xk = s[static_cast<std::size_t>(cf.order[k - 1])].x;
        const Complex bk = cf.coeffs[k];
        // A_k = b_k A_{k-1} + (z - x_{k-1}) A_{k-2}
        Poly a_next(std::max(a_cur.size(), a_prev.size() + 1), Complex{});
        Poly b_next(std::max(b_cur.size(), b_prev.size() + 1), Complex{});
        for (std::size_t i = 0; i < a_cur.size(); ++i)
            a_next[i] += bk * a_cur[i];
        for (std::size_t i = 0; i < a_prev.size(); ++i) {
            a_next[i + 1] += a_prev[i];
            a_next[i] -= xk * a_prev[i];
        }
        for (std::size_t i = 0; i < b_cur.size(); ++i)
            b_next[i] += bk * b_cur[i];
        for (std::size_t i = 0; i < b_prev.size(); ++i) {
            b_next[i + 1] += b_prev[i];
            b_next[i] -= xk * b_prev[i];
        }
        double m = 0.0;
        for (const Poly* p : {&a_next, &b_next, &a_cur, &b_cur})
            for (const Complex& c : *p)
                m = std::max(m, std::abs(c));
        if (m > 1e120) {
            const double f = std::ldexp(1.0, -std::ilogb(m));
            scale_all({&a_next, &b_next, &a_cur, &b_cur}, f);
        }
        a_prev = std::move(a_cur);
        a_cur = std::move(a_next);
        b_prev = std::move(b_cur);
        b_cur = std::move(b_next);
    }
    num = std::move(a_cur);
    den = std::move(b_cur);
}

}  // namespace

RationalApproximant build_rational(std::vector<Sample> samples, const PadeOptions& opts, Axis axis,
                                   double fixed_value)
{
    if (samples.size() < 4)
        throw ValidationError("rational interpolation needs at least 4 samples");
    std::sort(samples.begin(), samples.end(),
              [](const Sample& a, const Sample& b) { return a.x < b.x; });
    const double span = samples.back().x - samples.front().x;
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].x - samples[i - 1].x > 1e-12 * std::max(1.0, span)))
            throw ValidationError("duplicate abscissae in rational interpolation");

    double f_max = 0.0;
    for (const Sample& s : samples)
        f_max = std::max(f_max, std::abs(s.f));

    const std::size_t n = samples.size();
    using PivotFn = std::function<std::size_t(const std::vector<int>&, const std::vector<Complex>&)>;
    auto fixed_order_pivot = [](std::vector<int> order) {
        return [order = std::move(order)](const std::vector<int>& remaining,
                                          const std::vector<Complex>&) -> std::size_t {
            for (int want : order) {
                auto it = std::find(remaining.begin(), remaining.end(), want);
                if (it != remaining.end())
                    return static_cast<std::size_t>(it - remaining.begin());
            }
            return 0;
        };
    };
    std::vector<int> ascending(n), descending(n), center_out(n);
    std::iota(ascending.begin(), ascending.end(), 0);
    descending.assign(ascending.rbegin(), ascending.rend());
    std::iota(center_out.begin(), center_out.end(), 0);
    const double mid = 0.5 * (samples.front().x + samples.back().x);
    std::stable_sort(center_out.begin(), center_out.end(), [&](int a, int b) {
        return std::abs(samples[static_cast<std::size_t>(a)].x - mid) <
               std::abs(samples[static_cast<std::size_t>(b)].x - mid);
    });

    std::vector<PivotFn> strategies;
    strategies.emplace_back(greedy_maximin_pivot);
    strategies.emplace_back(fixed_order_pivot(ascending));
    strategies.emplace_back(fixed_order_pivot(descending));
    strategies.emplace_back(fixed_order_pivot(center_out));

    for (const PivotFn& strat : strategies) {
        auto built = build_attempt(samples, f_max, opts, strat);
        if (!built)
            continue;

        RationalApproximant ra;
        ra.axis = axis;
        ra.fixed_value = fixed_value;
        ra.cf_coeffs = built->coeffs;
        ra.nodes.reserve(n);
        ra.values.reserve(n);
        std::vector<bool> used(n, false);
        for (int idx : built->order) {
            ra.nodes.push_back(samples[static_cast<std::size_t>(idx)].x);
            ra.values.push_back(samples[static_cast<std::size_t>(idx)].f);
            used[static_cast<std::size_t>(idx)] = true;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!used[i]) {
                ra.nodes.push_back(samples[i].x);
                ra.values.push_back(samples[i].f);
            }
        }
        ra.window = {samples.front().x, samples.back().x};

        bool ok = true;
        for (const Sample& s : samples) {
            const Complex v = evaluate_cf(ra.cf_coeffs,
                                          std::span<const double>(ra.nodes).first(ra.cf_order()), s.x);
            if (!(std::abs(v - s.f) <= opts.interp_rel_tol * interp_scale(std::abs(s.f), f_max))) {
                ok = false;
                break;
            }
        }
        if (!ok)
            continue;

        derive_polys(*built, samples, ra.num_poly, ra.den_poly);
        ra.den_roots = poly_roots(ra.den_poly);
        ra.num_roots = poly_roots(ra.num_poly);
        return ra;
    }
    throw NumericalError("degenerate data: rational interpolation failed for every pivot order");
}

Complex evaluate(const RationalApproximant& ra, Complex z)
{
    for (const Complex& r : ra.den_roots)
        if (std::abs(z - r) < 1e-12)
            throw NumericalError("evaluation at pole");
    return evaluate_cf(ra.cf_coeffs, std::span<const double>(ra.nodes).first(ra.cf_order()), z);
}

Complex evaluate_poly_ratio(const RationalApproximant& ra, Complex z)
{
    return poly_eval(ra.num_poly, z) / poly_eval(ra.den_poly, z);
}

Complex conjugate_evaluate(const RationalApproximant& ra, Complex z)
{
    return std::conj(evaluate(ra, std::conj(z)));
}

std::string PoleQuality::flag_string() const
{
    std::string s;
    if (unpolished)
        s += "unpolished";
    if (multiple)
        s += s.empty() ? "multiple" : "|multiple";
    return s.empty() ? "-" : s;
}

std::vector<ComplexPole> extract_poles(const RationalApproximant& ra)
{
    std::vector<ComplexPole> poles;
    if (poly_degree(ra.den_poly) < 1)
        return poles;

    const Poly den_deriv = poly_derivative(ra.den_poly);
    std::vector<std::pair<Complex, bool>> polished;  // (root, converged)
    for (const Complex& r : ra.den_roots) {
        const PolishResult pr = newton_polish(ra.den_poly, r);
        polished.emplace_back(pr.converged ? pr.root : r, pr.converged);
    }

    std::vector<bool> consumed(polished.size(), false);
    for (std::size_t i = 0; i < polished.size(); ++i) {
        if (consumed[i])
            continue;
        const Complex z0 = polished[i].first;
        // Polishing collapses companion eigenvalues of a multiple root onto
        // the same point; cluster them.
        std::size_t multiplicity = 1;
        for (std::size_t j = i + 1; j < polished.size(); ++j) {
            if (consumed[j])
                continue;
            if (std::abs(polished[j].first - z0) <= 1e-7 * (1.0 + std::abs(z0))) {
                consumed[j] = true;
                ++multiplicity;
            }
        }
        ComplexPole pole;
        pole.position = z0;
        pole.quality.unpolished = !polished[i].second;
        if (multiplicity > 1) {
            pole.quality.multiple = true;
            pole.residue = Complex(0.0, 0.0);
        } else {
            pole.residue = poly_eval(ra.num_poly, z0) / poly_eval(den_deriv, z0);
        }
        double dist = std::numeric_limits<double>::infinity();
        for (const Complex& nz : ra.num_roots)
            dist = std::min(dist, std::abs(z0 - nz));
        pole.quality.pole_zero_dist = dist;
        poles.push_back(pole);
    }
    std::sort(poles.begin(), poles.end(), [](const ComplexPole& a, const ComplexPole& b) {
        if (a.position.real() != b.position.real())
            return a.position.real() < b.position.real();
        return a.position.imag() < b.position.imag();
    });
    return poles;
}

std::vector<ComplexPole> filter_spurious(const std::vector<ComplexPole>& poles,
                                         const RationalApproximant& ra,
                                         std::span<const Sample> samples,
                                         const FilterPolicy& policy, const PadeOptions& opts)
{
    std::vector<ComplexPole> kept;
    if (poles.empty())
        return kept;

    // Leave-one-out refits, aggregated in node order.
    std::vector<std::vector<Complex>> refit_poles;
    if (policy.loo_stability && samples.size() >= 5) {
        refit_poles.reserve(samples.size());
        for (std::size_t drop = 0; drop < samples.size(); ++drop) {
            std::vector<Sample> sub;
            sub.reserve(samples.size() - 1);
            for (std::size_t i = 0; i < samples.size(); ++i)
                if (i != drop)
                    sub.push_back(samples[i]);
            std::vector<Complex> positions;
            try {
                const RationalApproximant sub_ra = build_rational(sub, opts, ra.axis, ra.fixed_value);
                for (const ComplexPole& p : extract_poles(sub_ra))
                    positions.push_back(p.position);
            } catch (const std::exception&) {
                // A failed refit simply contributes no matches.
            }
            refit_poles.push_back(std::move(positions));
        }
    }

    for (const ComplexPole& pole : poles) {
        ComplexPole p = pole;
        const double im = p.position.imag();
        if (policy.half_plane == HalfPlane::Upper && !(im > 0.0))
            continue;
        if (policy.half_plane == HalfPlane::Lower && !(im < 0.0))
            continue;
        if (std::abs(im) > policy.im_max)
            continue;
        if (p.quality.multiple)
            continue;
        if (!(p.quality.pole_zero_dist > policy.eps_froissart))
            continue;
        if (!(std::abs(p.residue) >= policy.residue_floor))
            continue;
        if (!refit_poles.empty()) {
            std::size_t matched = 0;
            for (const auto& positions : refit_poles) {
                for (const Complex& q : positions) {
                    if (std::abs(q - p.position) < policy.match_radius) {
                        ++matched;
                        break;
                    }
                }
            }
            p.quality.stability =
                static_cast<double>(matched) / static_cast<double>(refit_poles.size());
            if (p.quality.stability < policy.stability_fraction)
                continue;
        }
        kept.push_back(p);
    }
    return kept;
}

void write_pole_csv(std::span<const PoleRecord> records, std::ostream& out)
{
    out << "axis,fixed_value,re_pos,im_pos,re_residue,im_residue,pole_zero_dist,stability,flags\n";
    for (const PoleRecord& r : records) {
        out << axis_name(r.axis) << "," << format_double(r.fixed_value) << ","
            << format_double(r.pole.position.real()) << ","
            << format_double(r.pole.position.imag()) << ","
            << format_double(r.pole.residue.real()) << ","
            << format_double(r.pole.residue.imag()) << ","
            << format_double(r.pole.quality.pole_zero_dist) << ","
            << format_double(r.pole.quality.stability) << "," << r.pole.quality.flag_string()
            << "\n";
    }
}

std::vector<PoleRecord> read_pole_csv(std::istream& in, const std::string& source_name)
{
    std::vector<PoleRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t.rfind("axis,", 0) == 0)
            continue;
        const std::string where = source_name + ":" + std::to_string(line_no);
        const auto f = split_csv_line(t);
        if (f.size() != 9)
            throw ValidationError("expected 9 columns at " + where);
        PoleRecord r;
        r.axis = axis_from_name(f[0]);
        r.fixed_value = parse_double(f[1], where);
        r.pole.position = Complex(parse_double(f[2], where), parse_double(f[3], where));
        r.pole.residue = Complex(parse_double(f[4], where), parse_double(f[5], where));
        r.pole.quality.pole_zero_dist = parse_double(f[6], where);
        r.pole.quality.stability = parse_double(f[7], where);
        r.pole.quality.unpolished = f[8].find("unpolished") != std::string::npos;
        r.pole.quality.multiple = f[8].find("multiple") != std::string::npos;
        out.push_back(r);
    }
    return out;
}

}  // namespace cam

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "r31/bandgap.hpp"
#include "r31/bnf.hpp"
#include "r31/common.hpp"
#include "r31/config.hpp"
#include "r31/elliptic.hpp"
#include "r31/freq.hpp"
#include "r31/modal.hpp"
#include "r31/portrait.hpp"
#include "r31/quartic.hpp"
#include "r31/verify.hpp"

using namespace r31;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Fixture {
    double a1, a2;
    Zone zone;
};
const Fixture kFixtures[] = {{-1, -2, Zone::Z10},     {1, 2, Zone::Z01},     {-1, 3, Zone::Z21plus},
                             {-1, 2, Zone::Z21minus}, {1, -2, Zone::Z12plus}, {1, -3, Zone::Z12minus}};

struct Pipeline {
    OscillatorSystem sys;
    ModalData m;
    QuarticCoeffs q;
};

Pipeline honeycomb(double Mt, double Kt, double k1, double k2) {
    HoneycombParams h;
    h.Mtilde = Mt;
    h.Ktilde = Kt;
    h.k1 = k1;
    h.k2 = k2;
    Pipeline p;
    p.sys = honeycomb_system(h);
    p.m = diagonalize(p.sys);
    p.q = quartic_coeffs(p.m, p.sys.cubic_v, p.sys.cubic_y);
    return p;
}

// ---- 1 ----------------------------------------------------------------------

Outcome diagonalization() {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.1, 5.0), c(-0.95, 0.95);
    double worst_m = 0, worst_k = 0;
    int done = 0;
    while (done < 1000) {
        OscillatorSystem s;
        s.m11 = u(rng);
        s.m22 = u(rng);
        s.m12 = c(rng) * std::sqrt(s.m11 * s.m22);
        s.k1 = u(rng);
        s.k2 = u(rng);
        const ModalData m = diagonalize(s);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                const double pa0 = m.phi[0][a], pa1 = m.phi[1][a], pb0 = m.phi[0][b], pb1 = m.phi[1][b];
                const double mm = pa0 * (s.m11 * pb0 + s.m12 * pb1) + pa1 * (s.m12 * pb0 + s.m22 * pb1);
                const double kk = pa0 * s.k1 * pb0 + pa1 * s.k2 * pb1;
                const double w = a == 0 ? m.omega_minus : m.omega_plus;
                worst_m = std::max(worst_m, std::abs(mm - (a == b)));
                worst_k = std::max(worst_k, std::abs(kk - (a == b ? w * w : 0.0)));
            }
        ++done;
    }
    return {worst_m < 1e-12 && worst_k < 1e-12,
            fmt("1000 systems, max |Phi'M Phi - I| = %.2e, max |Phi'K Phi - Lambda| = %.2e", worst_m, worst_k)};
}

// ---- 2 ----------------------------------------------------------------------

// Resonant average of the physical quartic potential on the torus with
// acoustic action Ia, optical action Io and phi2 = 3 phi1 + psi1. Trapezoid
// rule in phi1 is exact for the trigonometric polynomial involved.
double averaged_quartic(const Pipeline& p, double Ia, double Io, double psi1) {
    const int n = 64;
    const double ra = std::sqrt(2 * Ia / p.m.omega_minus), ro = std::sqrt(2 * Io / p.m.omega_plus);
    double sum = 0;
    for (int i = 0; i < n; ++i) {
        const double ph = 2 * pi * i / n;
        const double q1 = ra * std::cos(ph), q2 = ro * std::cos(3 * ph + psi1);
        const double v = p.m.phi1m() * q1 + p.m.phi1p() * q2;
        const double y = p.m.phi2m() * q1 + p.m.phi2p() * q2;
        sum += 0.25 * (p.sys.cubic_v * std::pow(v, 4) + p.sys.cubic_y * std::pow(y, 4));
    }
    return sum / n;
}

Pipeline pipeline(const OscillatorSystem& sys) {
    Pipeline p;
    p.sys = sys;
    p.m = diagonalize(sys);
    p.q = quartic_coeffs(p.m, sys.cubic_v, sys.cubic_y);
    return p;
}

// Returns |lhs - rhs| / (|chi| J2^2) and the same over the largest quartic coefficient.
std::pair<double, double> identity_error(const Pipeline& p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0, 1), ang(0, 2 * pi), lg(-1, 1);
    // admissible: detuning and quartic terms of comparable size
    const double J2 = std::abs(p.m.sigma / p.q.chi) * std::pow(10.0, lg(rng));
    const double x = 0.001 + 0.998 * u(rng);
    const double J1 = x * J2 / 3, psi = ang(rng);
    const EffectiveParams e = effective_params(p.q, p.m, J2);
    const double lhs = e.chi * J2 * J2 * (F_eval(e, psi + e.psi_shift, x) + e.a0);
    const double rhs = p.m.sigma * J1 + averaged_quartic(p, J2 - 3 * J1, J1, psi);
    const double gmax = std::max({std::abs(p.q.g2020), std::abs(p.q.g1111), std::abs(p.q.g0202), e.chi});
    return {std::abs(lhs - rhs) / (e.chi * J2 * J2), std::abs(lhs - rhs) / (gmax * J2 * J2)};
}

Outcome lemma_identity() {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0, 1), um(0.1, 5.0), c(-0.9, 0.9), cu(-3, 3), ukt(1.0, 10.0);
    double worst = 0;
    for (int n = 0; n < 1000;) {
        OscillatorSystem s;
        s.m11 = um(rng);
        s.m22 = um(rng);
        s.m12 = c(rng) * std::sqrt(s.m11 * s.m22);
        s.k1 = um(rng);
        s.k2 = um(rng);
        s.cubic_v = cu(rng);
        s.cubic_y = cu(rng);
        const Pipeline p = pipeline(s);
        if (p.q.degenerate_coupling() || p.m.sigma == 0) continue;
        worst = std::max(worst, identity_error(p, rng).first);
        ++n;
    }
    // Honeycomb couplings can be 1e4..1e10 times smaller than the other quartic
    // coefficients, so there the bound is taken relative to the largest one.
    double worst_h = 0;
    for (int n = 0; n < 1000;) {
        double a = u(rng), b = u(rng);
        if (a + b > 1) a = 1 - a, b = 1 - b;
        const double k1 = a * 4 * pi / 3 + b * pi, k2 = b * pi / std::sqrt(3.0);
        if (k1 < 0.3) continue;
        const Pipeline p = honeycomb(0.05 + 0.2 * u(rng), ukt(rng), k1, k2);
        if (p.q.degenerate_coupling() || p.m.sigma == 0) continue;
        worst_h = std::max(worst_h, identity_error(p, rng).second);
        ++n;
    }
    return {worst < 1e-12 && worst_h < 1e-12,
            fmt("vs torus average of the quartic potential: 1000 generic states max err / (|chi| J2^2) = %.2e; "
                "1000 honeycomb states max err / (max|coeff| J2^2) = %.2e",
                worst, worst_h)};
}

// ---- 3 ----------------------------------------------------------------------

Outcome zone_fixtures() {
    int ok = 0;
    std::string bad;
    for (const auto& f : kFixtures) {
        const Zone z = classify(f.a1, f.a2);
        if (z == f.zone) ++ok;
        else bad += fmt(" (%g,%g)->%s", f.a1, f.a2, to_string(z));
    }
    const double eg = std::abs(g_boundary(2) + 47.0 / 27), et = std::abs(gtilde_boundary(1) + 62.0 / 27);
    return {ok == 6 && eg < 1e-14 && et < 1e-14,
            fmt("%d/6 fixtures%s, |g(2)+47/27| = %.1e, |gtilde(1)+62/27| = %.1e", ok, bad.c_str(), eg, et)};
}

// ---- 4 ----------------------------------------------------------------------

Outcome quartic_roots() {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-4, 4), w(0, 1);
    int compared = 0, count_mismatch = 0, skipped_gap = 0;
    double worst = 0, worst_line = 0;
    while (compared < 100000) {
        const double a1 = u(rng), a2 = u(rng);
        if (is_degenerate(classify(a1, a2, 1e-6))) continue;
        const PortraitSummary s = portrait_summary(make_params(a1, a2));
        const double E = s.e_minus + w(rng) * (s.e_plus - s.e_minus);
        if (std::abs(E) < 1e-8) continue;
        const QuarticRoots o = roots_oracle(a1, a2, E);
        std::vector<double> ox = o.xs;
        std::sort(ox.begin(), ox.end());
        double gap = 1;
        for (std::size_t i = 0; i < ox.size(); ++i) {
            gap = std::min({gap, ox[i], 1 - ox[i]});
            if (i) gap = std::min(gap, ox[i] - ox[i - 1]);
        }
        if (o.has_complex_pair) gap = std::min(gap, std::abs(o.x_complex.imag()));
        if (gap <= 1e-4) {
            ++skipped_gap;
            continue;
        }
        const QuarticRoots r = roots_t(a1, a2, E);
        std::vector<double> xs = r.xs;
        std::sort(xs.begin(), xs.end());
        ++compared;
        if (xs.size() != ox.size()) {
            ++count_mismatch;
            continue;
        }
        for (std::size_t i = 0; i < xs.size(); ++i) worst = std::max(worst, std::abs(xs[i] - ox[i]));
        const EffectiveParams p = make_params(a1, a2);
        const QuarticRoots rx = roots_x(a1, a2, E);
        for (int i = 0; i < rx.count; ++i)
            worst_line = std::max(worst_line,
                                  std::abs(F_eval(p, rx.line_of[i] == Line::Zero ? 0.0 : pi, rx.xs[i]) - E));
    }
    return {count_mismatch == 0 && worst < 1e-9 && worst_line < 1e-10,
            fmt("%d instances (%d skipped for gap <= 1e-4), count mismatches %d, max |x - x_companion| = %.2e, "
                "max line residual = %.2e",
                compared, skipped_gap, count_mismatch, worst, worst_line)};
}

// ---- 5 ----------------------------------------------------------------------

// int over (lo, hi) of x^power / (pi sqrt(-P)), -P = lead (x-lo)(hi-x) other(x),
// with x = lo + (hi-lo) sin^2 th removing both endpoint singularities.
double desingularized(double lo, double hi, double lead, const std::function<double(double)>& other, int power) {
    auto f = [&](double th) {
        const double s = std::sin(th), x = lo + (hi - lo) * s * s;
        return 2.0 * (power ? x : 1.0) / (pi * std::sqrt(lead * other(x)));
    };
    double err = 0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, pi / 2, 15, 1e-13, &err);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome elliptic_forms() {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-4, 4), w(0.02, 0.98);
    std::map<Zone, int> per_zone;
    std::map<std::pair<Zone, int>, int> per_kind;
    int real4 = 0, complex2 = 0;
    double worst = 0, worst_branch = 0;
    while (real4 + complex2 < 1000 || per_zone.size() < 6) {
        const double a1 = u(rng), a2 = u(rng);
        const Zone z = classify(a1, a2, 1e-6);
        if (is_degenerate(z)) continue;
        const PortraitSummary s = portrait_summary(make_params(a1, a2));
        const RegionInfo& reg = s.regions[std::uniform_int_distribution<std::size_t>(0, s.regions.size() - 1)(rng)];
        const double E = reg.e_lo + w(rng) * (reg.e_hi - reg.e_lo);
        const QuarticRoots r = roots_x(a1, a2, E);
        if (r.near_degenerate || r.from_oracle) continue;
        const double lead = 1 + a2 * a2 / 4;
        if (per_kind[{z, r.count}]++ >= 150) continue;
        if (r.count == 4) {
            const double* x = r.xs.data();
            if (std::min({x[1] - x[0], x[2] - x[1], x[3] - x[2]}) < 1e-4) continue;
            const MoebiusReal4 mb = moebius_real4(x[0], x[1], x[2], x[3], lead);
            auto o_lo = [&](double t) { return (x[2] - t) * (x[3] - t); };
            auto o_hi = [&](double t) { return (t - x[0]) * (t - x[1]); };
            const double w_lo = desingularized(x[0], x[1], lead, o_lo, 0);
            const double w_hi = desingularized(x[2], x[3], lead, o_hi, 0);
            worst_branch = std::max(worst_branch, rel(w_lo, w_hi));
            worst = std::max({worst, rel(int_W_real4(mb), w_lo),
                              rel(int_xW_real4(mb, Branch::Lower), desingularized(x[0], x[1], lead, o_lo, 1)),
                              rel(int_xW_real4(mb, Branch::Upper), desingularized(x[2], x[3], lead, o_hi, 1))});
            ++real4;
        } else if (r.count == 2 && r.has_complex_pair) {
            if (r.xs[1] - r.xs[0] < 1e-4 || r.x_complex.imag() < 1e-4) continue;
            const MoebiusComplex2 mb = moebius_complex2(r.xs[0], r.xs[1], r.x_complex, lead);
            auto o = [&](double t) { return std::norm(t - r.x_complex); };
            worst = std::max({worst, rel(int_W_complex2(mb), desingularized(r.xs[0], r.xs[1], lead, o, 0)),
                              rel(int_xW_complex2(mb), desingularized(r.xs[0], r.xs[1], lead, o, 1))});
            ++complex2;
        } else {
            continue;
        }
        ++per_zone[z];
    }
    return {worst < 1e-8 && worst_branch < 1e-11,
            fmt("%d four-root and %d two-root instances over %zu zones, max rel err = %.2e, branch equality %.2e",
                real4, complex2, per_zone.size(), worst, worst_branch)};
}

// ---- 6 ----------------------------------------------------------------------

Outcome action_derivative() {
    double worst = 0, worst_i2 = 0;
    int pairs = 0;
    for (const auto& f : kFixtures) {
        const EffectiveParams p = make_params(f.a1, f.a2);
        const PortraitSummary s = portrait_summary(p);
        for (const auto& r : s.regions) {
            ++pairs;
            for (int i = 1; i <= 9; ++i) {
                const double E = r.e_lo + (r.e_hi - r.e_lo) * (0.05 + 0.9 * (i - 0.5) / 9);
                const double h = 1e-6;
                const double fd = (area(p, E + h, r.region) - area(p, E - h, r.region)) / (2 * h);
                worst = std::max(worst, rel(action_chart(p, E, r.region).dA_dE, fd));
                EffectiveParams p0 = p;
                p0.sigma = 0;
                p0.J2 = 1e-4;
                worst_i2 = std::max(worst_i2, std::abs(action_chart(p0, E, r.region).dA_dI2));
            }
        }
    }
    return {worst < 1e-5 && worst_i2 < 1e-12,
            fmt("%d (zone, region) pairs x 9 energies, max rel err = %.2e, max |dA/dI2| at sigma = 0: %.2e", pairs,
                worst, worst_i2)};
}

// ---- 7 ----------------------------------------------------------------------

Outcome dynamics() {
    const double J2 = 1e-4;
    double worst = 0;
    int orbits = 0, wrap_mismatch = 0;
    for (const auto& f : kFixtures) {
        // reduced system whose effective parameters are exactly (a1, a2), chi = 1
        ReducedSystem rs;
        rs.chi = 1;
        rs.g02 = 4.5 * f.a2;
        rs.sigma = 3 * J2 * f.a1;
        rs.omega_minus = 1;
        rs.J2 = J2;
        EffectiveParams p = make_params(f.a1, f.a2);
        p.J2 = J2;
        p.sigma = rs.sigma;
        const PortraitSummary s = portrait_summary(p);
        for (const auto& r : s.regions)
            for (double frac : {0.25, 0.5, 0.75}) {
                const double E = r.e_lo + frac * (r.e_hi - r.e_lo);
                const ActionChart ch = action_chart(p, E, r.region);
                const double w1 = 3 * p.chi * J2 / ch.dA_dE;
                const double psi = ch.pair.line_lo == Line::Zero ? 0.0 : pi;
                const PeriodResult pr = reduced_period(rs, ch.pair.x_lo * J2 / 3, psi, 1e4 * 2 * pi / std::abs(w1));
                worst = std::max(worst, rel(pr.period, 2 * pi / std::abs(w1)));
                wrap_mismatch += pr.wraps != (r.lines == "mixed");
                ++orbits;
            }
    }

    // exact ODE at the default step, 1e6 steps
    HoneycombParams h;
    h.Mtilde = 0.09;
    h.Ktilde = 8;
    h.k1 = 4 * pi / 3;
    const OscillatorSystem sys = honeycomb_system(h);
    const ModalData m = diagonalize(sys);
    const double dt = default_exact_dt(m);
    const Trajectory tr = integrate_exact(sys, m, {0.0036, 0.0025, 0, 0}, 1e6 * dt, dt);
    const EnergyStats es = energy_stats(tr);

    return {worst < 1e-4 && wrap_mismatch == 0 && es.secular_drift < 1e-8,
            fmt("%d orbits over all zones/regions, max period rel err = %.2e, winding mismatches %d; "
                "%ld steps (%s), energy drift = %.2e",
                orbits, worst, wrap_mismatch, tr.steps, tr.scheme.c_str(), es.secular_drift)};
}

// ---- 8 ----------------------------------------------------------------------

Outcome spectral() {
    const double C = VerifyConfig{}.calib_C;
    const Thresholds th;
    struct Point {
        double Mt, Kt, k1, k2;
    };
    const Point pts[] = {{0.09, 8, 4 * pi / 3, 0}, {0.2, 1.1, 2.0, 0.5}, {0.09, 8, 1.5, 0.3}};
    double worst_ratio = 0;
    int runs = 0, skipped = 0;
    std::string slope_note;
    for (const auto& pt : pts) {
        const Pipeline p = honeycomb(pt.Mt, pt.Kt, pt.k1, pt.k2);
        const double eps_max = th.C1 * std::sqrt(std::abs(p.m.sigma));
        std::vector<std::pair<double, double>> errs;
        for (double eps : {1e-4, 2.5e-4, 5e-4, 1e-3, 1.4e-3}) {
            if (eps > eps_max) {
                ++skipped;
                continue;
            }
            const double am = eps, ap = 0.7 * eps;
            const auto [wm, wp] = nonresonant_formula_sl1(p.m, p.sys.cubic_y, am, ap);
            const double dt = 0.5 * default_exact_dt(p.m), T = 2000 * 2 * pi / p.m.omega_minus;
            ExactRunOptions eo;
            eo.record_energy = false;
            const Trajectory tr = integrate_exact(p.sys, p.m, {am, ap, 0, 0}, T, dt, eo);
            std::vector<double> s1, s2;
            for (const auto& x : tr.x) {
                s1.push_back(x[0]);
                s2.push_back(x[1]);
            }
            auto band = [&](double w) { return std::max(0.05 * w, 40 * pi / T); };
            const double e1 = std::abs(peak_near(extract_frequencies(s1, dt, 6, 20), wm - band(wm), wm + band(wm)).omega - wm);
            const double e2 = std::abs(peak_near(extract_frequencies(s2, dt, 6, 20), wp - band(wp), wp + band(wp)).omega - wp);
            const double err = std::max(e1, e2);
            worst_ratio = std::max(worst_ratio, err / std::max(1e-4, C * std::pow(eps, 4)));
            errs.push_back({eps, err});
            ++runs;
        }
        // remainder order on the reference point
        if (slope_note.empty() && errs.size() >= 2) {
            const auto& a = errs[errs.size() - 2];
            const auto& b = errs.back();
            slope_note = fmt("%.2f", std::log(b.second / a.second) / std::log(b.first / a.first));
        }
    }
    return {worst_ratio < 1 && runs >= 8,
            fmt("C = %.1e (calibrated at X, Mt = 0.09, Kt = 8), %d runs (%d above the nonresonant amplitude bound), "
                "max err / tol = %.2f, error order at X = %s",
                C, runs, skipped, worst_ratio, slope_note.c_str())};
}

// ---- 9 ----------------------------------------------------------------------

Outcome bandgap_anchors(double& longest) {
    struct Anchor {
        double Mt, Kt, a_minus, a_plus;
        bool want_increment;
        const char* tag;
    };
    const Anchor anchors[] = {{0.09, 8, 0.0036, 0.0025, true, "i"},
                              {0.146, 5.73, 0.002, 0.0012, false, "ii"},
                              {0.2, 1.1, 0.002, 0.001, false, "iii"}};
    bool all = true;
    std::string d;
    longest = 0;
    for (const auto& a : anchors) {
        const auto t0 = std::chrono::steady_clock::now();
        SweepSpec sp;
        sp.base.Mtilde = a.Mt;
        sp.base.Ktilde = a.Kt;
        sp.base.N3 = -1e4;
        sp.a_minus = a.a_minus;
        sp.a_plus = a.a_plus;
        bool ok = false;
        std::string what;
        try {
            const BandgapReport br = bandgap_report(sp, dispersion_sweep(sp));
            ok = a.want_increment ? std::abs(br.pct_increment - 30) <= 5 : br.pct_increment < 0 && br.case_tag == a.tag;
            what = fmt("%+.2f%% case %s", br.pct_increment, br.case_tag.c_str());
        } catch (const Rejection& e) {
            what = std::string("rejected: ") + e.what();
        }
        const double sec = seconds_since(t0);
        longest = std::max(longest, sec);
        ok = ok && sec < 120;
        all = all && ok;
        d += fmt("%s(%g,%g): %s [want %s, case %s] %.0fs; ", ok ? "" : "MISS ", a.Mt, a.Kt, what.c_str(),
                 a.want_increment ? "30+-5%" : "decrement", a.tag, sec);
    }
    return {all, d};
}

// ---- 10 ---------------------------------------------------------------------

Outcome resonant_counts() {
    const double Kts[] = {2, 3.6, 5, 5.73, 10.79};
    const int want[] = {4, 6, 4, 3, 2};
    bool all = true;
    std::string got;
    for (int i = 0; i < 5; ++i) {
        HoneycombParams h;
        h.Mtilde = 0.146;
        h.Ktilde = Kts[i];
        const int n = resonant_curves(h).intersections;
        all = all && n == want[i];
        got += fmt("%s%d", i ? "," : "", n);
    }
    return {all, "counts {" + got + "} vs {4,6,4,3,2}"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;  // 0: no runtime bound
        std::function<Outcome()> run;
    };
    double longest_sweep = 0;
    const std::vector<Criterion> all = {
        {1, "diagonalization", 1, diagonalization},
        {2, "reduced Hamiltonian identity", 1, lemma_identity},
        {3, "zone fixtures and boundary values", 0, zone_fixtures},
        {4, "quartic closed form vs companion matrix", 30, quartic_roots},
        {5, "elliptic closed forms vs quadrature", 60, elliptic_forms},
        {6, "action derivative", 0, action_derivative},
        {7, "dynamics cross-check", 300, dynamics},
        {8, "nonresonant spectral check", 0, spectral},
        {9, "bandgap anchors", 0, [&] { return bandgap_anchors(longest_sweep); }},
        {10, "resonant-curve counts", 60, resonant_counts},
    };
    int failed = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double sec = seconds_since(t0);
        const bool in_time = c.limit_s == 0 || sec < c.limit_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("[%s] %2d %s: %s (%.2fs%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), sec,
                    in_time ? "" : fmt(", over the %.0fs budget", c.limit_s).c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", int(all.size()) - failed, all.size());
    return failed ? 1 : 0;
}

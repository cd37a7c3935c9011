#include "r31/portrait.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace r31 {

const char* to_string(Zone z) {
    switch (z) {
        case Zone::Z10: return "Z10";
        case Zone::Z01: return "Z01";
        case Zone::Z12plus: return "Z12plus";
        case Zone::Z12minus: return "Z12minus";
        case Zone::Z21plus: return "Z21plus";
        case Zone::Z21minus: return "Z21minus";
        case Zone::OnLineA1A2: return "OnLineA1A2";
        case Zone::OnG: return "OnG";
        case Zone::OnGneg: return "OnGneg";
        case Zone::OnGtilde: return "OnGtilde";
    }
    return "?";
}

bool is_degenerate(Zone z) {
    return z == Zone::OnLineA1A2 || z == Zone::OnG || z == Zone::OnGneg || z == Zone::OnGtilde;
}

const char* to_string(Region r) {
    switch (r) {
        case Region::I: return "I";
        case Region::II: return "II";
        case Region::III: return "III";
        case Region::IV: return "IV";
    }
    return "?";
}

const char* to_string(CritKind k) {
    switch (k) {
        case CritKind::Max: return "max";
        case CritKind::Min: return "min";
        case CritKind::Saddle: return "saddle";
    }
    return "?";
}

double g_boundary(double a1) {
    const double r = std::sqrt(9.0 + 4.0 * a1 * a1);
    // sqrt(9+4a^2) - 2a without cancellation for large positive a
    const double first = a1 > 0 ? 9.0 / (r + 2.0 * a1) : r - 2.0 * a1;
    return first * (9.0 - 4.0 * a1 * a1 - 4.0 * a1 * r) / 27.0;
}

double gneg_boundary(double a1) { return -g_boundary(-a1); }

double gtilde_boundary(double a1) { return -2.0 / 27.0 * a1 * (4.0 * a1 * a1 + 27.0); }

Zone classify(double a1, double a2, double tau) {
    const double g = g_boundary(a1), h = gneg_boundary(a1);
    if (std::abs(a2 - g) < tau) return Zone::OnG;
    if (std::abs(a2 - h) < tau) return Zone::OnGneg;
    if (std::abs(a2 + a1) < tau) return Zone::OnLineA1A2;
    if (a2 < h) return Zone::Z10;
    if (a2 > g) return Zone::Z01;
    const double gt = gtilde_boundary(a1);
    if (std::abs(a2 - gt) < tau) return Zone::OnGtilde;
    if (a2 < -a1) return a2 > gt ? Zone::Z12plus : Zone::Z12minus;
    return a2 > gt ? Zone::Z21plus : Zone::Z21minus;
}

namespace {

constexpr double kTiny = 1e-300;

// Root of f on (lo,hi) where f changes sign; bisection, then a Newton polish
// that is kept inside the final bracket.
double bracketed_root(const std::function<double(double)>& f,
                      const std::function<double(double)>& df, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= 4 * std::numeric_limits<double>::epsilon() * hi) break;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
        const double d = df(x);
        if (d == 0) break;
        const double xn = x - f(x) / d;
        if (!(xn > lo && xn < hi) || !(std::abs(f(xn)) < std::abs(f(x)))) break;
        x = xn;
    }
    return x;
}

// Zeros of phi(x) = b'(x) + s (a2 x + a1) on (0,1); phi is convex with
// phi(0+) = +inf and phi(1) = s (a1 + a2).
std::vector<double> convex_zeros(double a1, double a2, double s) {
    auto phi = [=](double x) { return db_of(x) + s * (a2 * x + a1); };
    auto dphi = [=](double x) { return d2b_of(x) + s * a2; };
    // minimiser of phi: b''(x) = -s a2, b'' increasing from -inf to +inf
    const double xs = bracketed_root(dphi, [](double) { return 0.0; }, kTiny, 1.0 - 1e-16);
    const double fmin = phi(xs);
    const double f1 = s * (a1 + a2);
    std::vector<double> out;
    if (fmin >= 0) return out;
    out.push_back(bracketed_root(phi, dphi, kTiny, xs));
    if (f1 > 0) out.push_back(bracketed_root(phi, dphi, xs, 1.0 - 1e-16));
    return out;
}

}  // namespace

std::vector<CriticalPoint> critical_points(const EffectiveParams& p) {
    std::vector<CriticalPoint> out;
    // psi = 0: a'(x) + b'(x) = 0, phi = b' + a2 x + a1
    const auto z0 = convex_zeros(p.a1, p.a2, +1.0);
    for (std::size_t i = 0; i < z0.size(); ++i) {
        CriticalPoint c;
        c.line = Line::Zero;
        c.psi = 0;
        c.x = z0[i];
        c.kind = i == 0 ? CritKind::Max : CritKind::Saddle;
        c.energy = a_of(p, c.x) + b_of(c.x);
        out.push_back(c);
    }
    // psi = pi: a'(x) - b'(x) = 0, phi = b' - a2 x - a1
    const auto zp = convex_zeros(p.a1, p.a2, -1.0);
    for (std::size_t i = 0; i < zp.size(); ++i) {
        CriticalPoint c;
        c.line = Line::Pi;
        c.psi = pi;
        c.x = zp[i];
        c.kind = i == 0 ? CritKind::Min : CritKind::Saddle;
        c.energy = a_of(p, c.x) - b_of(c.x);
        out.push_back(c);
    }
    return out;
}

const RegionInfo* PortraitSummary::find(Region r) const {
    for (const auto& ri : regions)
        if (ri.region == r) return &ri;
    return nullptr;
}

PortraitSummary portrait_summary(const EffectiveParams& p, double tau_zone) {
    PortraitSummary s;
    s.a1 = p.a1;
    s.a2 = p.a2;
    s.zone = classify(p.a1, p.a2, tau_zone);
    s.criticals = critical_points(p);
    s.a_at_1 = 0.5 * p.a2 + p.a1;
    for (const auto& c : s.criticals) {
        if (c.kind == CritKind::Max) s.e_max = c.energy;
        if (c.kind == CritKind::Min) s.e_min = c.energy;
        if (c.kind == CritKind::Saddle) s.e_sad = c.energy;
    }
    s.e_plus = s.e_max ? std::max(*s.e_max, s.a_at_1) : s.a_at_1;
    s.e_minus = s.e_min ? std::min(*s.e_min, s.a_at_1) : s.a_at_1;
    if (is_degenerate(s.zone)) return s;

    auto expect = [&](std::size_t nmax, std::size_t nmin, std::size_t nsad) {
        std::size_t cmax = 0, cmin = 0, csad = 0;
        for (const auto& c : s.criticals) {
            cmax += c.kind == CritKind::Max;
            cmin += c.kind == CritKind::Min;
            csad += c.kind == CritKind::Saddle;
        }
        if (cmax != nmax || cmin != nmin || csad != nsad) {
            std::ostringstream os;
            os << "critical points do not match zone " << to_string(s.zone) << " at (a1,a2)=("
               << p.a1 << "," << p.a2 << ")";
            throw InternalError(os.str());
        }
    };
    const double a1v = s.a_at_1;
    auto add = [&](Region r, double lo, double hi, const char* lines) {
        s.regions.push_back({r, lo, hi, lines});
    };
    switch (s.zone) {
        case Zone::Z10:
            expect(1, 0, 0);
            add(Region::I, 0.0, *s.e_max, "0-0");
            add(Region::II, a1v, 0.0, "mixed");
            break;
        case Zone::Z01:
            expect(0, 1, 0);
            add(Region::II, 0.0, a1v, "mixed");
            add(Region::III, *s.e_min, 0.0, "pi-pi");
            break;
        case Zone::Z21plus:
            expect(1, 1, 1);
            add(Region::I, *s.e_sad, *s.e_max, "0-0");
            add(Region::II, 0.0, *s.e_sad, "mixed");
            add(Region::III, *s.e_min, 0.0, "pi-pi");
            add(Region::IV, *s.e_sad, a1v, "mixed");
            break;
        case Zone::Z21minus:
            expect(1, 1, 1);
            add(Region::I, 0.0, *s.e_max, "0-0");
            add(Region::II, *s.e_sad, 0.0, "mixed");
            add(Region::III, *s.e_min, *s.e_sad, "pi-pi");
            add(Region::IV, *s.e_sad, a1v, "mixed");
            break;
        case Zone::Z12plus:
            expect(1, 1, 1);
            add(Region::I, *s.e_sad, *s.e_max, "0-0");
            add(Region::II, 0.0, *s.e_sad, "mixed");
            add(Region::III, *s.e_min, 0.0, "pi-pi");
            add(Region::IV, a1v, *s.e_sad, "mixed");
            break;
        case Zone::Z12minus:
            expect(1, 1, 1);
            add(Region::I, 0.0, *s.e_max, "0-0");
            add(Region::II, *s.e_sad, 0.0, "mixed");
            add(Region::III, *s.e_min, *s.e_sad, "pi-pi");
            add(Region::IV, a1v, *s.e_sad, "mixed");
            break;
        default: break;
    }
    return s;
}

double default_tau_E(const PortraitSummary& s) {
    return 1e-9 * std::max(1.0, s.e_sad ? std::abs(*s.e_sad) : 0.0);
}

void check_noncritical(const PortraitSummary& s, double E, double tau_E) {
    auto near = [&](double e) { return std::abs(E - e) < tau_E; };
    bool bad = near(0.0) || near(s.a_at_1);
    for (const auto& c : s.criticals) bad = bad || near(c.energy);
    if (bad) {
        std::ostringstream os;
        os << "singular level set: E=" << E << " is within " << tau_E
           << " of a critical or separatrix energy";
        throw Rejection(os.str());
    }
}

namespace {

RootPair make_pair(const QuarticRoots& r, int i, bool upper) {
    RootPair p;
    p.x_lo = r.xs[i];
    p.x_hi = r.xs[i + 1];
    p.line_lo = r.line_of[i];
    p.line_hi = r.line_of[i + 1];
    p.upper = upper;
    return p;
}

bool matches(const RootPair& p, Region region) {
    switch (region) {
        case Region::I: return p.line_lo == Line::Zero && p.line_hi == Line::Zero;
        case Region::III: return p.line_lo == Line::Pi && p.line_hi == Line::Pi;
        default: return p.line_lo != p.line_hi;
    }
}

}  // namespace

RootPair select_pair(const QuarticRoots& r, Region region) {
    if (r.count == 2) {
        RootPair p = make_pair(r, 0, false);
        if (!matches(p, region))
            throw InternalError(std::string("root/line pattern inconsistent with region ") +
                                to_string(region));
        return p;
    }
    if (r.count == 4) {
        RootPair lo = make_pair(r, 0, false), hi = make_pair(r, 2, true);
        const bool ml = matches(lo, region), mh = matches(hi, region);
        if (ml && mh) {
            if (region == Region::II) return lo;
            if (region == Region::IV) return hi;
        } else if (ml) {
            return lo;
        } else if (mh) {
            return hi;
        }
        throw InternalError(std::string("root/line pattern inconsistent with region ") +
                            to_string(region));
    }
    throw InternalError("no level curve: quartic has no real roots in (0,1)");
}

Region resolve_region(const PortraitSummary& s, const QuarticRoots& r, double E, double x) {
    if (r.count != 2 && r.count != 4) throw InternalError("resolve_region: unexpected root count");
    int idx = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < r.count; i += 2) {
        const double d = std::max({r.xs[i] - x, x - r.xs[i + 1], 0.0});
        if (d < best) {
            best = d;
            idx = i;
        }
    }
    if (best > 1e-8) throw InternalError("resolve_region: point not on a level curve");
    const RootPair p = make_pair(r, idx, idx == 2);
    if (p.line_lo == Line::Zero && p.line_hi == Line::Zero) return Region::I;
    if (p.line_lo == Line::Pi && p.line_hi == Line::Pi) return Region::III;
    if (r.count == 4) {
        // both pairs may be wrapping: lower one is II, upper one is IV
        const RootPair other = make_pair(r, idx == 0 ? 2 : 0, idx == 0);
        if (other.line_lo != other.line_hi) return idx == 0 ? Region::II : Region::IV;
    }
    const RegionInfo* ii = s.find(Region::II);
    const RegionInfo* iv = s.find(Region::IV);
    const bool in2 = ii && E > ii->e_lo && E < ii->e_hi;
    const bool in4 = iv && E > iv->e_lo && E < iv->e_hi;
    if (in2 && !in4) return Region::II;
    if (in4 && !in2) return Region::IV;
    throw InternalError("resolve_region: cannot decide between regions II and IV");
}

LevelCurve level_curve(const EffectiveParams& p, double E, Region region, int npts, double tau_E) {
    const PortraitSummary s = portrait_summary(p);
    if (is_degenerate(s.zone)) throw Rejection("level_curve: degenerate zone");
    const RegionInfo* ri = s.find(region);
    if (!ri) throw Rejection(std::string("region ") + to_string(region) + " absent in zone " +
                             to_string(s.zone));
    if (tau_E < 0) tau_E = default_tau_E(s);
    check_noncritical(s, E, tau_E);
    if (!(E > ri->e_lo && E < ri->e_hi)) throw Rejection("energy outside the region's range");
    const QuarticRoots r = roots_x(p.a1, p.a2, E);
    const RootPair pr = select_pair(r, region);
    LevelCurve lc;
    lc.region = region;
    lc.E = E;
    npts = std::max(npts, 2);
    for (int i = 0; i < npts; ++i) {
        const double u = 0.5 * (1.0 - std::cos(pi * i / (npts - 1)));
        double x = pr.x_lo + (pr.x_hi - pr.x_lo) * u;
        double psi;
        if (i == 0) {
            x = pr.x_lo;
            psi = pr.line_lo == Line::Zero ? 0.0 : pi;
        } else if (i == npts - 1) {
            x = pr.x_hi;
            psi = pr.line_hi == Line::Zero ? 0.0 : pi;
        } else {
            double c = (E - a_of(p, x)) / b_of(x);
            if (std::abs(c) > 1.0 + 1e-12) throw InternalError("level_curve: |cos psi| > 1");
            c = std::clamp(c, -1.0, 1.0);
            psi = std::acos(c);
        }
        lc.x.push_back(x);
        lc.psi.push_back(psi);
    }
    return lc;
}

}  // namespace r31

#include "r31/freq.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "r31/elliptic.hpp"

namespace r31 {

namespace {

using boost::math::quadrature::gauss_kronrod;

// Quadratic cofactor Q with P(x) = (x - r1)(x - r2) Q(x), coefficients descending.
std::array<double, 3> deflate(double a1, double a2, double E, double r1, double r2) {
    const auto c = quartic_x_coeffs(a1, a2, E);
    const double d[5] = {c[4], c[3], c[2], c[1], c[0]};
    double b[4];
    b[0] = d[0];
    for (int i = 1; i < 4; ++i) b[i] = d[i] + r1 * b[i - 1];
    std::array<double, 3> e;
    e[0] = b[0];
    for (int i = 1; i < 3; ++i) e[i] = b[i] + r2 * e[i - 1];
    return e;
}

double eval2(const std::array<double, 3>& e, double x) { return (e[0] * x + e[1]) * x + e[2]; }

template <class F>
double integrate_theta(F f) {
    double err = 0;
    return gauss_kronrod<double, 61>::integrate(f, 0.0, pi / 2, 12, 1e-13, &err);
}

}  // namespace

double int_W_quadrature(double a1, double a2, double E, double x_lo, double x_hi, bool times_x) {
    const auto Q = deflate(a1, a2, E, x_lo, x_hi);
    const double d = x_hi - x_lo;
    auto f = [&](double th) {
        const double s = std::sin(th);
        const double x = x_lo + d * s * s;
        const double q = eval2(Q, x);
        const double w = 2.0 / (pi * std::sqrt(std::max(q, 1e-300)));
        return times_x ? x * w : w;
    };
    return integrate_theta(f);
}

double psi_integral(const EffectiveParams& p, double E, const RootPair& pr) {
    const auto Q = deflate(p.a1, p.a2, E, pr.x_lo, pr.x_hi);
    const double d = pr.x_hi - pr.x_lo;
    auto f = [&](double th) {
        const double s = std::sin(th), c = std::cos(th);
        const double x = pr.x_lo + d * s * s;
        // sqrt(-P) = b sin(psi), with -P = (x - x_lo)(x_hi - x) Q(x)
        const double y = d * s * c * std::sqrt(std::max(eval2(Q, x), 0.0));
        const double psi = std::atan2(y, E - a_of(p, x));
        return psi * d * 2.0 * s * c;
    };
    return integrate_theta(f);
}

namespace {

double area_from_pair(const EffectiveParams& p, double E, Region region, const RootPair& pr) {
    const double ip = psi_integral(p, E, pr) / pi;
    switch (region) {
        case Region::I: return ip;
        case Region::III: return (pr.x_hi - pr.x_lo) - ip;
        default: return pr.line_lo == Line::Pi ? pr.x_lo + ip : pr.x_hi - ip;
    }
}

}  // namespace

double area(const EffectiveParams& p, double E, Region region) {
    const QuarticRoots r = roots_x(p.a1, p.a2, E);
    return area_from_pair(p, E, region, select_pair(r, region));
}

ActionChart action_chart(const EffectiveParams& p, double E, Region region) {
    ActionChart ch;
    ch.region = region;
    ch.zone = classify(p.a1, p.a2);
    ch.E = E;
    ch.I2 = p.J2;
    const QuarticRoots r = roots_x(p.a1, p.a2, E);
    ch.root_count = r.count;
    ch.pair = select_pair(r, region);
    ch.area = area_from_pair(p, E, region, ch.pair);
    ch.sign_used = ch.pair.line_hi == Line::Pi ? +1 : -1;

    const double lead = 1.0 + 0.25 * p.a2 * p.a2;
    bool done = false;
    if (!r.near_degenerate) {
        try {
            if (r.count == 4) {
                const MoebiusReal4 mb = moebius_real4(r.xs[0], r.xs[1], r.xs[2], r.xs[3], lead);
                ch.int_W = int_W_real4(mb);
                ch.int_xW = int_xW_real4(mb, ch.pair.upper ? Branch::Upper : Branch::Lower);
                done = true;
            } else if (r.count == 2 && r.has_complex_pair) {
                const MoebiusComplex2 mb = moebius_complex2(r.xs[0], r.xs[1], r.x_complex, lead);
                ch.int_W = int_W_complex2(mb);
                ch.int_xW = int_xW_complex2(mb);
                done = true;
            }
        } catch (const Rejection&) {
            done = false;
        }
    }
    if (!done) {
        ch.closed_form = false;
        ch.int_W = int_W_quadrature(p.a1, p.a2, E, ch.pair.x_lo, ch.pair.x_hi, false);
        ch.int_xW = int_W_quadrature(p.a1, p.a2, E, ch.pair.x_lo, ch.pair.x_hi, true);
    }
    ch.dA_dE = ch.sign_used * ch.int_W;
    ch.dA_dI2 = ch.sign_used * p.sigma / (3.0 * p.chi * p.J2 * p.J2) * ch.int_xW;
    return ch;
}

const char* to_string(Regime r) {
    switch (r) {
        case Regime::Nonresonant: return "nonresonant";
        case Regime::ResonantGeneric: return "resonant_generic";
        case Regime::ResonantExact: return "resonant_exact";
    }
    return "?";
}

const char* to_string(FrequencyForm f) {
    return f == FrequencyForm::Literal ? "literal" : "action_consistent";
}

FrequencyForm frequency_form_from_string(const std::string& s) {
    if (s == "literal") return FrequencyForm::Literal;
    if (s == "action_consistent") return FrequencyForm::ActionConsistent;
    throw Rejection("unknown frequency form '" + s + "'");
}

FrequencyPair frequencies_resonant(const EffectiveParams& p, double E, Region region,
                                   const ModalData& m, const QuarticCoeffs& q,
                                   const FreqOptions& opt) {
    const ActionChart ch = action_chart(p, E, region);
    FrequencyPair fp;
    fp.E = E;
    fp.I2 = p.J2;
    fp.zone = ch.zone;
    fp.region = region;
    fp.sign_used = ch.sign_used;
    fp.dA_dE = ch.dA_dE;
    fp.dA_dI2 = ch.dA_dI2;
    fp.area = ch.area;
    const double I2 = p.J2, chi = p.chi;
    fp.omega1 = 3.0 * chi * I2 / ch.dA_dE;
    const double extra =
        opt.form == FrequencyForm::ActionConsistent ? chi * I2 * ch.area / ch.dA_dE : 0.0;
    if (std::abs(m.sigma) < opt.tau_sigma_rel * m.omega_minus) {
        fp.regime = Regime::ResonantExact;
        const double V = 1.0 / (2.0 * ch.dA_dE);
        fp.w_minus = m.omega_minus + 2.0 * I2 * (chi * E + q.g2020) - extra;
        fp.w_plus = m.omega_plus + 6.0 * I2 * (chi * E + q.g2020 + chi * V) - 3.0 * extra;
    } else {
        fp.regime = Regime::ResonantGeneric;
        fp.w_minus = m.omega_minus + chi * I2 * (2.0 * (E + p.a0) - I2 * ch.dA_dI2 / ch.dA_dE) - extra;
        fp.w_plus = 3.0 * fp.w_minus + fp.omega1;
    }
    return fp;
}

FrequencyPair frequencies_nonresonant(const QuarticCoeffs& q, const ModalData& m, double a_minus,
                                      double a_plus) {
    if (a_minus < 0 || a_plus < 0) throw Rejection("amplitudes must be nonnegative");
    const double I1 = 0.5 * m.omega_minus * a_minus * a_minus;
    const double I2 = 0.5 * m.omega_plus * a_plus * a_plus;
    FrequencyPair fp;
    fp.regime = Regime::Nonresonant;
    fp.a_minus = a_minus;
    fp.a_plus = a_plus;
    fp.w_minus = m.omega_minus + 2.0 * q.g2020 * I1 + q.g1111 * I2;
    fp.w_plus = m.omega_plus + q.g1111 * I1 + 2.0 * q.g0202 * I2;
    return fp;
}

std::pair<double, double> nonresonant_formula_sl1(const ModalData& m, double N3, double a_minus,
                                                  double a_plus) {
    const double wm = m.omega_minus, wp = m.omega_plus;
    const double pm = m.phi2m(), pp = m.phi2p();
    const double am2 = a_minus * a_minus, ap2 = a_plus * a_plus;
    const double mixed = pm * pm * pp * pp;
    const double wmn = wm + N3 * (3.0 / (8.0 * wm) * std::pow(pm, 4) * am2 + 3.0 / (4.0 * wm) * mixed * ap2);
    const double wpn = wp + N3 * (3.0 / (8.0 * wp) * std::pow(pp, 4) * ap2 + 3.0 / (4.0 * wp) * mixed * am2);
    return {wmn, wpn};
}

ChartEntry amplitudes_to_chart(double a_minus, double a_plus, const QuarticCoeffs& q,
                               const ModalData& m, double tau_zone, double tau_E) {
    if (a_minus < 0 || a_plus < 0) throw Rejection("amplitudes must be nonnegative");
    if (a_minus == 0 && a_plus == 0) throw Rejection("both amplitudes are zero");
    ChartEntry ce;
    const double um = m.omega_minus * a_minus * a_minus;
    const double up = 3.0 * m.omega_plus * a_plus * a_plus;
    ce.I2 = 0.5 * (um + up);
    ce.x_dagger = up / (um + up);
    ce.params = effective_params(q, m, ce.I2);
    const EffectiveParams& p = ce.params;
    ce.line = p.psi_shift == 0.0 ? Line::Zero : Line::Pi;
    if (!(ce.x_dagger > 0 && ce.x_dagger < 1))
        throw Rejection("initial point on the boundary of the cylinder (one amplitude is zero)");
    ce.E = a_of(p, ce.x_dagger) + std::cos(p.psi_shift) * b_of(ce.x_dagger);
    ce.summary = portrait_summary(p, tau_zone);
    if (is_degenerate(ce.summary.zone))
        throw Rejection(std::string("degenerate zone ") + to_string(ce.summary.zone));
    check_noncritical(ce.summary, ce.E, tau_E < 0 ? default_tau_E(ce.summary) : tau_E);
    const QuarticRoots r = roots_x(p.a1, p.a2, ce.E);
    ce.region = resolve_region(ce.summary, r, ce.E, ce.x_dagger);
    return ce;
}

}  // namespace r31

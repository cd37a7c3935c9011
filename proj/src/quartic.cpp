#include "r31/quartic.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace r31 {

namespace {

double x_of_t(double t) { return t * t / (1.0 + t * t); }
std::complex<double> x_of_t(std::complex<double> t) { return t * t / (1.0 + t * t); }

// Newton polish of a real root of t^4 + p t^2 + q t + r.
double polish_t(double t, double p, double q, double r) {
    for (int it = 0; it < 3; ++it) {
        const double t2 = t * t;
        const double f = (t2 + p) * t2 + q * t + r;
        const double df = 4.0 * t2 * t + 2.0 * p * t + q;
        if (df == 0) break;
        const double step = f / df;
        const double tn = t - step;
        const double fn = (tn * tn + p) * tn * tn + q * tn + r;
        if (!(std::abs(fn) < std::abs(f))) break;
        t = tn;
        if (std::abs(step) <= 1e-17 * std::abs(t)) break;
    }
    return t;
}

// Polish a root of the expanded quartic in x; stops as soon as the residual
// stops decreasing so that clustered roots are not pushed onto each other.
double polish_x(const std::array<double, 5>& c, double x) {
    for (int it = 0; it < 4; ++it) {
        const double f = (((c[4] * x + c[3]) * x + c[2]) * x + c[1]) * x + c[0];
        const double df = ((4 * c[4] * x + 3 * c[3]) * x + 2 * c[2]) * x + c[1];
        if (df == 0) break;
        const double xn = x - f / df;
        const double fn = (((c[4] * xn + c[3]) * xn + c[2]) * xn + c[1]) * xn + c[0];
        if (!(std::abs(fn) < std::abs(f))) break;
        x = xn;
    }
    return x;
}

Line line_from_t(double t) { return t < 0 ? Line::Zero : Line::Pi; }

void assign(QuarticRoots& out, const std::vector<double>& ts) {
    out.ts = ts;
    out.xs.clear();
    out.line_of.clear();
    for (double t : ts) {
        out.xs.push_back(x_of_t(t));
        out.line_of.push_back(line_from_t(t));
    }
    out.count = static_cast<int>(ts.size());
}

}  // namespace

std::array<double, 5> quartic_x_coeffs(double a1, double a2, double E) {
    return {E * E, -2.0 * a1 * E - 1.0, a1 * a1 - a2 * E + 3.0, a1 * a2 - 3.0,
            0.25 * a2 * a2 + 1.0};
}

double quartic_x_eval(double a1, double a2, double E, double x) {
    const double a = 0.5 * a2 * x * x + a1 * x - E;
    const double u = 1.0 - x;
    return a * a - u * u * u * x;
}

QuarticRoots roots_t(double a1, double a2, double E, const QuarticTolerances& tol) {
    if (E == 0) throw Rejection("E = 0 is the separatrix level through x = 0");
    QuarticRoots out;
    const double lead = 0.5 * a2 + a1 - E;
    if (std::abs(lead) < tol.tau_lead * (1.0 + std::abs(E))) {
        // P(t) collapses to (a1+a2) t^2 + t + a1 + a2/2 (up to sign); the two
        // lost roots sit at x = 1 where P(x) has a double root.
        out.quadratic_case = true;
        out.near_degenerate = true;
        const double A = a1 + a2, B = 1.0, C = a1 + 0.5 * a2;
        std::vector<double> ts;
        if (std::abs(A) < 1e-14) {
            ts.push_back(-C / B);
        } else {
            const double disc = B * B - 4 * A * C;
            if (disc >= 0) {
                const double qq = -0.5 * (B + std::copysign(std::sqrt(disc), B));
                ts.push_back(qq / A);
                if (qq != 0) ts.push_back(C / qq);
            }
        }
        assign(out, ts);
        return out;
    }
    const double p = (a1 - 2.0 * E) / lead;
    const double q = -1.0 / lead;
    const double r = -E / lead;

    const double ps = -(p * p + 12.0 * r) / 3.0;
    const double qs = -(2.0 * p * p * p - 72.0 * p * r + 27.0 * q * q) / 27.0;
    const double Delta = -4.0 * ps * ps * ps - 27.0 * qs * qs;
    double s;
    if (Delta <= 0) {
        const double sq = std::sqrt(-Delta / 108.0);
        s = std::cbrt(-qs / 2.0 + sq) + std::cbrt(-qs / 2.0 - sq) - 2.0 * p / 3.0;
    } else {
        const double arg = std::clamp(-qs / 2.0 * std::sqrt(std::pow(-3.0 / ps, 3)), -1.0, 1.0);
        s = 2.0 * std::sqrt(-ps / 3.0) * std::cos(std::acos(arg) / 3.0) - 2.0 * p / 3.0;
    }
    // Polish s on the resolvent cubic s^3 + 2p s^2 + (p^2-4r) s - q^2 = 0.
    for (int it = 0; it < 2 && s > 0; ++it) {
        const double f = ((s + 2 * p) * s + (p * p - 4 * r)) * s - q * q;
        const double df = (3 * s + 4 * p) * s + (p * p - 4 * r);
        if (df == 0) break;
        const double sn = s - f / df;
        const double fn = ((sn + 2 * p) * sn + (p * p - 4 * r)) * sn - q * q;
        if (sn > 0 && std::abs(fn) < std::abs(f)) s = sn;
    }
    out.s_star = s;
    if (!(s > 0) || !std::isfinite(s)) {
        out.near_degenerate = true;
        return out;
    }
    const double rs = std::sqrt(s);
    const double dp = 2.0 * q / rs - 2.0 * p - s;
    const double dm = -2.0 * q / rs - 2.0 * p - s;
    out.delta_plus = dp;
    out.delta_minus = dm;
    if (std::abs(dp) < tol.tau_delta || std::abs(dm) < tol.tau_delta) out.near_degenerate = true;

    // t^pm_sigma = (-sigma sqrt(s) +- sqrt(delta_sigma)) / 2
    std::vector<double> ts;
    auto real_pair = [&](double sg, double d) {
        const double sd = std::sqrt(d);
        ts.push_back(polish_t((-sg * rs + sd) / 2.0, p, q, r));
        ts.push_back(polish_t((-sg * rs - sd) / 2.0, p, q, r));
    };
    auto complex_root = [&](double sg, double d) {
        const std::complex<double> t(-sg * rs / 2.0, std::sqrt(-d) / 2.0);
        std::complex<double> x = x_of_t(t);
        if (x.imag() < 0) x = std::conj(x);
        out.has_complex_pair = true;
        out.x_complex = x;
    };
    if (dp > 0) real_pair(+1.0, dp);
    else complex_root(+1.0, dp);
    if (dm > 0) real_pair(-1.0, dm);
    else complex_root(-1.0, dm);
    if (dp > 0 && dm > 0) out.has_complex_pair = false;
    assign(out, ts);
    return out;
}

QuarticRoots roots_x(double a1, double a2, double E, const QuarticTolerances& tol) {
    QuarticRoots rt = roots_t(a1, a2, E, tol);
    if (rt.near_degenerate) {
        QuarticRoots o = roots_oracle(a1, a2, E);
        o.near_degenerate = true;
        o.quadratic_case = rt.quadratic_case;
        o.delta_plus = rt.delta_plus;
        o.delta_minus = rt.delta_minus;
        o.s_star = rt.s_star;
        return o;
    }
    QuarticRoots out = rt;
    if (rt.count == 4) {
        // ts = {t+^+, t+^-, t-^+, t-^-}; x1,x2 from {x+^+, x-^-}, x3,x4 from {x-^+, x+^-}
        const int lo_pair[2] = {0, 3}, hi_pair[2] = {2, 1};
        std::vector<int> order;
        auto push_sorted = [&](const int* pr) {
            if (rt.xs[pr[0]] <= rt.xs[pr[1]]) {
                order.push_back(pr[0]);
                order.push_back(pr[1]);
            } else {
                order.push_back(pr[1]);
                order.push_back(pr[0]);
            }
        };
        push_sorted(lo_pair);
        push_sorted(hi_pair);
        out.xs.clear();
        out.ts.clear();
        out.line_of.clear();
        for (int i : order) {
            out.xs.push_back(rt.xs[i]);
            out.ts.push_back(rt.ts[i]);
            out.line_of.push_back(rt.line_of[i]);
        }
    } else if (rt.count == 2) {
        if (rt.xs[0] > rt.xs[1]) {
            std::swap(out.xs[0], out.xs[1]);
            std::swap(out.ts[0], out.ts[1]);
            std::swap(out.line_of[0], out.line_of[1]);
        }
    }
    bool ok = true;
    for (std::size_t i = 0; i < out.xs.size(); ++i) {
        if (!(out.xs[i] > 0 && out.xs[i] < 1)) ok = false;
        if (i > 0 && !(out.xs[i] > out.xs[i - 1])) ok = false;
    }
    if (!ok) {
        QuarticRoots o = roots_oracle(a1, a2, E);
        o.near_degenerate = true;
        return o;
    }
    return out;
}

QuarticRoots roots_oracle(double a1, double a2, double E) {
    const auto c = quartic_x_coeffs(a1, a2, E);
    Eigen::Matrix4d comp = Eigen::Matrix4d::Zero();
    for (int i = 0; i < 3; ++i) comp(i + 1, i) = 1.0;
    for (int i = 0; i < 4; ++i) comp(i, 3) = -c[i] / c[4];
    Eigen::EigenSolver<Eigen::Matrix4d> es(comp, false);
    const auto ev = es.eigenvalues();

    QuarticRoots out;
    out.from_oracle = true;
    std::vector<double> xs;
    for (int i = 0; i < 4; ++i) {
        const std::complex<double> z = ev(i);
        if (std::abs(z.imag()) <= 1e-7 * (1.0 + std::abs(z.real()))) {
            const double x = polish_x(c, z.real());
            if (x > 0 && x < 1) xs.push_back(x);
        } else if (z.imag() > 0) {
            out.has_complex_pair = true;
            out.x_complex = z;
        }
    }
    std::sort(xs.begin(), xs.end());
    out.xs = xs;
    out.count = static_cast<int>(xs.size());
    if (out.count == 4) out.has_complex_pair = false;
    for (double x : xs) {
        const double d = 0.5 * a2 * x * x + a1 * x - E;
        const Line l = d < 0 ? Line::Zero : Line::Pi;
        out.line_of.push_back(l);
        const double t = std::sqrt(x / (1.0 - x));
        out.ts.push_back(l == Line::Zero ? -t : t);
    }
    return out;
}

}  // namespace r31

#include "r31/bandgap.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <boost/math/tools/minima.hpp>

#include "r31/bnf.hpp"
#include "r31/common.hpp"

namespace r31 {

namespace {

const double kSqrt3 = std::sqrt(3.0);
// Gamma (0,0), X (4pi/3, 0), M (pi, pi/sqrt3)
const double kXk1 = 4.0 * pi / 3.0;
const double kMk1 = pi, kMk2 = pi / kSqrt3;
const double kLenGX = kXk1;
const double kLenXM = std::hypot(kXk1 - kMk1, kMk2);
const double kLenMG = std::hypot(kMk1, kMk2);

}  // namespace

double path_length() { return kLenGX + kLenXM + kLenMG; }
double path_s_at_X() { return kLenGX; }

PathPoint path_at(double s, double gamma_offset) {
    const double L = path_length();
    s = std::clamp(s, 0.0, L);
    PathPoint p;
    p.s = s;
    if (s <= kLenGX) {
        p.k1 = s;
        p.k2 = 0;
    } else if (s <= kLenGX + kLenXM) {
        const double t = (s - kLenGX) / kLenXM;
        p.k1 = kXk1 + t * (kMk1 - kXk1);
        p.k2 = t * kMk2;
    } else {
        const double t = (s - kLenGX - kLenXM) / kLenMG;
        p.k1 = (1 - t) * kMk1;
        p.k2 = (1 - t) * kMk2;
    }
    // Gamma is a double eigenvalue of the stiffness (K_H = 0); step off it
    // along the adjacent segment.
    if (s < gamma_offset) {
        p.k1 = gamma_offset;
        p.k2 = 0;
    } else if (L - s < gamma_offset) {
        p.k1 = gamma_offset * kMk1 / kLenMG;
        p.k2 = gamma_offset * kMk2 / kLenMG;
    }
    return p;
}

std::vector<PathPoint> boundary_path(int n, double gamma_offset) {
    if (n < 2) throw Rejection("boundary path needs at least 2 points");
    std::vector<PathPoint> out;
    out.reserve(n);
    const double L = path_length();
    for (int i = 0; i < n; ++i) out.push_back(path_at(L * i / (n - 1), gamma_offset));
    return out;
}

const char* to_string(PointRegime r) {
    switch (r) {
        case PointRegime::Nonresonant: return "nonresonant";
        case PointRegime::Resonant: return "resonant";
        case PointRegime::Rejected: return "rejected";
    }
    return "?";
}

PointRegime classify_regime(double sigma, const Thresholds& th) {
    const double lo = th.C1 * std::sqrt(std::abs(sigma));
    if (th.epsilon <= lo) return PointRegime::Nonresonant;
    if (th.epsilon <= th.C2) return PointRegime::Resonant;
    return PointRegime::Rejected;
}

void parallel_for(int n, int threads, const std::function<void(int)>& f) {
    if (threads <= 1 || n < 2) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    const int nt = std::min(threads, n);
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) f(i);
        });
}

DispersionPoint dispersion_point(const SweepSpec& spec, double s) {
    const PathPoint pp = path_at(s, spec.gamma_offset);
    DispersionPoint d;
    d.s = pp.s;
    d.k1 = pp.k1;
    d.k2 = pp.k2;
    HoneycombParams hp = spec.base;
    hp.k1 = pp.k1;
    hp.k2 = pp.k2;
    const OscillatorSystem sys = honeycomb_system(hp);
    const ModalData m = diagonalize(sys);
    d.sigma = m.sigma;
    d.w_minus_lin = m.omega_minus;
    d.w_plus_lin = m.omega_plus;
    d.regime = classify_regime(m.sigma, spec.th);
    d.w_nl.a_minus = spec.a_minus;
    d.w_nl.a_plus = spec.a_plus;
    try {
        if (d.regime == PointRegime::Nonresonant) {
            const auto [wm, wp] = nonresonant_formula_sl1(m, hp.N3, spec.a_minus, spec.a_plus);
            d.w_nl.w_minus = wm;
            d.w_nl.w_plus = wp;
            d.w_nl.regime = Regime::Nonresonant;
        } else if (d.regime == PointRegime::Resonant) {
            const QuarticCoeffs q = quartic_coeffs(m, sys.cubic_v, sys.cubic_y);
            require_coupling(q);
            const ChartEntry ce =
                amplitudes_to_chart(spec.a_minus, spec.a_plus, q, m, spec.th.tau_zone, spec.th.tau_E);
            d.zone = ce.summary.zone;
            d.region = ce.region;
            d.w_nl = frequencies_resonant(ce.params, ce.E, ce.region, m, q, spec.fo);
            d.w_nl.a_minus = spec.a_minus;
            d.w_nl.a_plus = spec.a_plus;
        } else {
            d.note = "neither regime condition holds";
        }
    } catch (const Rejection& e) {
        d.regime = PointRegime::Rejected;
        d.note = e.what();
    }
    return d;
}

std::vector<DispersionPoint> dispersion_sweep(const SweepSpec& spec) {
    if (spec.points < 2) throw Rejection("sweep needs at least 2 points");
    std::vector<DispersionPoint> out(spec.points);
    const double L = path_length();
    parallel_for(spec.points, spec.threads, [&](int i) {
        out[i] = dispersion_point(spec, L * i / (spec.points - 1));
    });
    return out;
}

namespace {

enum class Branch2 { Minus, Plus };

double value_of(const DispersionPoint& d, Branch2 b, bool nl) {
    if (nl) return b == Branch2::Minus ? d.w_nl.w_minus : d.w_nl.w_plus;
    return b == Branch2::Minus ? d.w_minus_lin : d.w_plus_lin;
}

Extremum as_extremum(const DispersionPoint& d, Branch2 b, bool nl) {
    Extremum e;
    e.value = value_of(d, b, nl);
    e.s = d.s;
    e.k1 = d.k1;
    e.k2 = d.k2;
    e.regime = d.regime;
    return e;
}

// Largest (sign=+1) or smallest (sign=-1) value over the grid, then a golden
// section search in the two adjacent cells when neighbours share the regime.
Extremum extremum(const SweepSpec& spec, const std::vector<DispersionPoint>& pts, Branch2 b,
                  bool nl, int sign) {
    int best = -1;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        if (nl && pts[i].regime == PointRegime::Rejected) continue;
        if (best < 0 || sign * value_of(pts[i], b, nl) > sign * value_of(pts[best], b, nl)) best = i;
    }
    if (best < 0) throw Rejection("every sweep point was rejected");
    Extremum e = as_extremum(pts[best], b, nl);
    const int n = static_cast<int>(pts.size());
    const int lo = std::max(best - 1, 0), hi = std::min(best + 1, n - 1);
    for (int i = lo; i <= hi; ++i)
        if (pts[i].regime != pts[best].regime) return e;
    if (lo == hi) return e;
    const auto obj = [&](double s) {
        const DispersionPoint d = dispersion_point(spec, s);
        if (d.regime != pts[best].regime) return std::numeric_limits<double>::infinity();
        return -sign * value_of(d, b, nl);
    };
    const auto [s_opt, f_opt] = boost::math::tools::brent_find_minima(obj, pts[lo].s, pts[hi].s, 40);
    if (std::isfinite(f_opt) && -sign * f_opt >= sign * e.value) {
        const DispersionPoint d = dispersion_point(spec, s_opt);
        e = as_extremum(d, b, nl);
    }
    return e;
}

}  // namespace

BandgapReport bandgap_report(const SweepSpec& spec, const std::vector<DispersionPoint>& pts) {
    if (pts.size() < 3) throw Rejection("sweep too short for a bandgap report");
    BandgapReport r;
    for (const auto& d : pts)
        if (d.regime == PointRegime::Rejected) ++r.rejected_points;
    r.acoustic_max_lin = extremum(spec, pts, Branch2::Minus, false, +1);
    r.optical_min_lin = extremum(spec, pts, Branch2::Plus, false, -1);
    r.acoustic_max_nl = extremum(spec, pts, Branch2::Minus, true, +1);
    r.optical_min_nl = extremum(spec, pts, Branch2::Plus, true, -1);
    r.width_lin = r.optical_min_lin.value - r.acoustic_max_lin.value;
    r.width_nl = r.optical_min_nl.value - r.acoustic_max_nl.value;
    r.gap_closed = r.width_nl <= 0;
    r.pct_increment = r.width_lin > 0 ? 100.0 * (r.width_nl / r.width_lin - 1.0)
                                      : std::numeric_limits<double>::quiet_NaN();
    r.regime_at_X = dispersion_point(spec, path_s_at_X()).regime;
    // the nonlinear acoustic maximum counts as "far from X" beyond 1% of the path
    const bool far_from_X =
        std::abs(r.acoustic_max_nl.s - path_s_at_X()) > 0.01 * path_length();
    if (far_from_X && r.acoustic_max_nl.regime == PointRegime::Resonant)
        r.case_tag = "iii";
    else if (r.regime_at_X == PointRegime::Resonant)
        r.case_tag = "ii";
    else
        r.case_tag = "i";
    return r;
}

double honeycomb_sigma(const HoneycombParams& base, double k1, double k2) {
    HoneycombParams hp = base;
    hp.k1 = k1;
    hp.k2 = k2;
    return diagonalize(honeycomb_system(hp)).sigma;
}

std::vector<Segment> marching_squares(const std::vector<std::vector<double>>& v, double x0,
                                      double dx, double y0, double dy) {
    std::vector<Segment> out;
    const int ny = static_cast<int>(v.size());
    if (ny < 2) return out;
    const int nx = static_cast<int>(v[0].size());
    const auto lerp = [](double a, double b) { return a / (a - b); };
    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            // corners counter-clockwise from (i,j)
            const double c[4] = {v[j][i], v[j][i + 1], v[j + 1][i + 1], v[j + 1][i]};
            if (std::isnan(c[0]) || std::isnan(c[1]) || std::isnan(c[2]) || std::isnan(c[3])) continue;
            const double cx[4] = {x0 + i * dx, x0 + (i + 1) * dx, x0 + (i + 1) * dx, x0 + i * dx};
            const double cy[4] = {y0 + j * dy, y0 + j * dy, y0 + (j + 1) * dy, y0 + (j + 1) * dy};
            double px[4], py[4];
            int ne = 0;
            for (int e = 0; e < 4; ++e) {
                const int f = (e + 1) % 4;
                if ((c[e] > 0) != (c[f] > 0)) {
                    const double t = lerp(c[e], c[f]);
                    px[ne] = cx[e] + t * (cx[f] - cx[e]);
                    py[ne] = cy[e] + t * (cy[f] - cy[e]);
                    ++ne;
                }
            }
            if (ne == 2) {
                out.push_back({px[0], py[0], px[1], py[1]});
            } else if (ne == 4) {
                // saddle cell: resolve with the centre value
                const double centre = 0.25 * (c[0] + c[1] + c[2] + c[3]);
                const bool c0pos = c[0] > 0;
                if ((centre > 0) == c0pos) {
                    out.push_back({px[0], py[0], px[1], py[1]});
                    out.push_back({px[2], py[2], px[3], py[3]});
                } else {
                    out.push_back({px[0], py[0], px[3], py[3]});
                    out.push_back({px[1], py[1], px[2], py[2]});
                }
            }
        }
    }
    return out;
}

ResonantCurves resonant_curves(const HoneycombParams& base, int grid, int boundary_samples,
                               int threads) {
    if (grid < 2 || boundary_samples < 10) throw Rejection("resonant curve grid too coarse");
    ResonantCurves rc;
    const double xmax = kXk1, ymax = kMk2;
    const double dx = xmax / grid, dy = ymax / grid;
    std::vector<std::vector<double>> vals(grid + 1, std::vector<double>(grid + 1));
    parallel_for(grid + 1, threads, [&](int j) {
        for (int i = 0; i <= grid; ++i) {
            const double k1 = i * dx, k2 = j * dy;
            // stay clear of Gamma where K_H vanishes
            if (!in_brillouin_triangle(k1, k2, 1e-9) || (i == 0 && j == 0))
                vals[j][i] = std::numeric_limits<double>::quiet_NaN();
            else
                vals[j][i] = honeycomb_sigma(base, k1, k2);
        }
    });
    rc.segments = marching_squares(vals, 0, dx, 0, dy);

    // Sign changes along the boundary; zeros closer than 1% of the path are one
    // intersection (a curve through a vertex, or grazing the boundary).
    const double L = path_length();
    std::vector<double> sig(boundary_samples);
    std::vector<double> ss(boundary_samples);
    parallel_for(boundary_samples, threads, [&](int i) {
        ss[i] = L * i / (boundary_samples - 1);
        const PathPoint p = path_at(ss[i]);
        sig[i] = honeycomb_sigma(base, p.k1, p.k2);
    });
    std::vector<double> zeros;
    for (int i = 0; i + 1 < boundary_samples; ++i) {
        if (sig[i] == 0.0) {
            zeros.push_back(ss[i]);
        } else if ((sig[i] > 0) != (sig[i + 1] > 0) && sig[i + 1] != 0.0) {
            zeros.push_back(ss[i] + (ss[i + 1] - ss[i]) * sig[i] / (sig[i] - sig[i + 1]));
        }
    }
    const double merge = 0.01 * L;
    for (std::size_t i = 0; i < zeros.size();) {
        std::size_t j = i + 1;
        while (j < zeros.size() && zeros[j] - zeros[j - 1] < merge) ++j;
        double acc = 0;
        for (std::size_t k = i; k < j; ++k) acc += zeros[k];
        rc.boundary_s.push_back(acc / (j - i));
        i = j;
    }
    rc.intersections = static_cast<int>(rc.boundary_s.size());
    return rc;
}

std::vector<Segment> curve_R(const HoneycombParams& base, double m_lo, double m_hi, double k_lo,
                             double k_hi, int grid) {
    if (grid < 2 || !(m_hi > m_lo) || !(k_hi > k_lo) || !(m_lo > 0) || !(k_lo > 0))
        throw Rejection("invalid (Mtilde, Ktilde) rectangle");
    const double dm = (m_hi - m_lo) / grid, dk = (k_hi - k_lo) / grid;
    std::vector<std::vector<double>> vals(grid + 1, std::vector<double>(grid + 1));
    for (int j = 0; j <= grid; ++j)
        for (int i = 0; i <= grid; ++i) {
            HoneycombParams hp = base;
            hp.Mtilde = m_lo + i * dm;
            hp.Ktilde = k_lo + j * dk;
            vals[j][i] = honeycomb_sigma(hp, kXk1, 0.0);
        }
    return marching_squares(vals, m_lo, dm, k_lo, dk);
}

}  // namespace r31

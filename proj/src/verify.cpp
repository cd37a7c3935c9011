#include "r31/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <fftw3.h>

#include "r31/common.hpp"

namespace r31 {

namespace {

std::array<double, 2> nonlinear_grad(const OscillatorSystem& s, const ModalData& m, double q1,
                                     double q2) {
    const double v = m.phi1m() * q1 + m.phi1p() * q2;
    const double y = m.phi2m() * q1 + m.phi2p() * q2;
    const double fv = s.cubic_v * v * v * v, fy = s.cubic_y * y * y * y;
    return {fv * m.phi1m() + fy * m.phi2m(), fv * m.phi1p() + fy * m.phi2p()};
}

}  // namespace

double exact_energy(const OscillatorSystem& s, const ModalData& m, const std::array<double, 4>& x) {
    const double wm = m.omega_minus, wp = m.omega_plus;
    const double v = m.phi1m() * x[0] + m.phi1p() * x[1];
    const double y = m.phi2m() * x[0] + m.phi2p() * x[1];
    return 0.5 * (x[2] * x[2] + x[3] * x[3]) + 0.5 * (wm * wm * x[0] * x[0] + wp * wp * x[1] * x[1]) +
           0.25 * s.cubic_v * v * v * v * v + 0.25 * s.cubic_y * y * y * y * y;
}

const char* to_string(ExactScheme s) {
    return s == ExactScheme::Verlet ? "verlet" : "rotation_kick";
}

ExactScheme exact_scheme_from_string(const std::string& s) {
    if (s == "verlet") return ExactScheme::Verlet;
    if (s == "rotation_kick") return ExactScheme::RotationKick;
    throw Rejection("unknown integration scheme '" + s + "'");
}

double default_exact_dt(const ModalData& m) { return 2.0 * pi / (40.0 * m.omega_plus); }

Trajectory integrate_exact(const OscillatorSystem& s, const ModalData& m,
                           const std::array<double, 4>& init, double T, double dt,
                           const ExactRunOptions& opt) {
    if (!(std::abs(dt) > 0)) throw Rejection("time step must be nonzero");
    if (std::abs(dt) > default_exact_dt(m) * (1 + 1e-12))
        throw Rejection("time step does not resolve the fast period (need |dt| <= 2pi/(40 omega_+))");
    if (!(T >= 0)) throw Rejection("integration time must be nonnegative");
    if (opt.sample_every < 1) throw Rejection("sample_every must be positive");
    const long n = std::lround(T / std::abs(dt));
    const double w[2] = {m.omega_minus, m.omega_plus};
    double c[2], sn[2];
    for (int j = 0; j < 2; ++j) {
        c[j] = std::cos(w[j] * dt);
        sn[j] = std::sin(w[j] * dt);
    }

    Trajectory tr;
    tr.dt = dt;
    tr.order = 2;
    tr.scheme = to_string(opt.scheme);
    tr.steps = n;
    std::array<double, 4> x = init;
    const auto record = [&](long i) {
        tr.t.push_back(i * dt);
        tr.x.push_back(x);
        if (opt.record_energy) tr.energy.push_back(exact_energy(s, m, x));
    };
    record(0);
    for (long i = 1; i <= n; ++i) {
        if (opt.scheme == ExactScheme::Verlet) {
            auto g = nonlinear_grad(s, m, x[0], x[1]);
            x[2] -= 0.5 * dt * (w[0] * w[0] * x[0] + g[0]);
            x[3] -= 0.5 * dt * (w[1] * w[1] * x[1] + g[1]);
            x[0] += dt * x[2];
            x[1] += dt * x[3];
            g = nonlinear_grad(s, m, x[0], x[1]);
            x[2] -= 0.5 * dt * (w[0] * w[0] * x[0] + g[0]);
            x[3] -= 0.5 * dt * (w[1] * w[1] * x[1] + g[1]);
        } else {
            auto g = nonlinear_grad(s, m, x[0], x[1]);
            x[2] -= 0.5 * dt * g[0];
            x[3] -= 0.5 * dt * g[1];
            for (int j = 0; j < 2; ++j) {
                const double q = x[j], p = x[j + 2];
                x[j] = c[j] * q + sn[j] / w[j] * p;
                x[j + 2] = -w[j] * sn[j] * q + c[j] * p;
            }
            g = nonlinear_grad(s, m, x[0], x[1]);
            x[2] -= 0.5 * dt * g[0];
            x[3] -= 0.5 * dt * g[1];
        }
        const double mag = std::max({std::abs(x[0]), std::abs(x[1]), std::abs(x[2]), std::abs(x[3])});
        if (!(mag <= opt.blowup))
            throw Rejection("integration blew up at t=" + std::to_string(i * dt));
        if (i % opt.sample_every == 0 || i == n) record(i);
    }
    return tr;
}

EnergyStats energy_stats(const Trajectory& tr, double window) {
    EnergyStats st;
    const std::size_t n = tr.energy.size();
    if (n == 0) return st;
    const double H0 = tr.energy[0];
    const double scale = std::abs(H0) > 0 ? std::abs(H0) : 1.0;
    for (double e : tr.energy) st.max_rel_deviation = std::max(st.max_rel_deviation, std::abs(e - H0) / scale);
    const std::size_t w = std::max<std::size_t>(1, static_cast<std::size_t>(window * n));
    double a = 0, b = 0;
    for (std::size_t i = 0; i < w; ++i) {
        a += tr.energy[i];
        b += tr.energy[n - w + i];
    }
    st.secular_drift = std::abs(b - a) / w / scale;
    return st;
}

// ---- reduced flow ------------------------------------------------------------

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

double ReducedSystem::H(double J1, double psi1) const {
    const double I1 = J2 - 3.0 * J1;
    return sigma * J1 + g20 * I1 * I1 + g11 * I1 * J1 + g02 * J1 * J1 +
           kSqrt3 * chi * std::sqrt(I1 * I1 * I1 * J1) * std::cos(psi1);
}

double ReducedSystem::dH_dJ1(double J1, double psi1) const {
    const double I1 = J2 - 3.0 * J1;
    return sigma - 6.0 * g20 * I1 + g11 * (I1 - 3.0 * J1) + 2.0 * g02 * J1 +
           kSqrt3 * chi * std::cos(psi1) * std::sqrt(I1) * (I1 - 9.0 * J1) / (2.0 * std::sqrt(J1));
}

double ReducedSystem::dH_dpsi(double J1, double psi1) const {
    const double I1 = J2 - 3.0 * J1;
    return -kSqrt3 * chi * std::sqrt(I1 * I1 * I1 * J1) * std::sin(psi1);
}

double ReducedSystem::dH_dJ2(double J1, double psi1) const {
    const double I1 = J2 - 3.0 * J1;
    return 2.0 * g20 * I1 + g11 * J1 + 1.5 * kSqrt3 * chi * std::sqrt(I1 * J1) * std::cos(psi1);
}

ReducedSystem reduced_system(const QuarticCoeffs& q, const ModalData& m, double J2) {
    if (!(J2 > 0)) throw Rejection("J2 must be positive");
    ReducedSystem rs;
    rs.sigma = m.sigma;
    rs.g20 = q.g2020;
    rs.g11 = q.g1111;
    rs.g02 = q.g0202;
    rs.chi = q.chi;
    rs.omega_minus = m.omega_minus;
    rs.J2 = J2;
    return rs;
}

const char* to_string(ReducedScheme s) {
    return s == ReducedScheme::ImplicitMidpoint ? "implicit_midpoint" : "gauss6";
}

namespace {

using State3 = std::array<double, 3>;  // J1, psi1, phi1

State3 rhs(const ReducedSystem& rs, double J1, double psi) {
    if (!(J1 > 0) || !(rs.J2 - 3.0 * J1 > 0))
        throw Rejection("reduced flow left the action cone (orbit reached x=0 or x=1)");
    return {-rs.dH_dpsi(J1, psi), rs.dH_dJ1(J1, psi), rs.omega_minus + rs.dH_dJ2(J1, psi)};
}

State3 step_midpoint(const ReducedSystem& rs, const State3& y, double h) {
    double J = y[0], p = y[1];
    State3 f{};
    for (int it = 0; it < 200; ++it) {
        f = rhs(rs, 0.5 * (y[0] + J), 0.5 * (y[1] + p));
        const double Jn = y[0] + h * f[0], pn = y[1] + h * f[1];
        const bool done = std::abs(Jn - J) <= 1e-16 * rs.J2 && std::abs(pn - p) <= 1e-15 * (1 + std::abs(pn));
        J = Jn;
        p = pn;
        if (done) break;
    }
    return {J, p, y[2] + h * f[2]};
}

State3 step_gauss6(const ReducedSystem& rs, const State3& y, double h) {
    static const double r15 = std::sqrt(15.0);
    static const double A[3][3] = {{5.0 / 36, 2.0 / 9 - r15 / 15, 5.0 / 36 - r15 / 30},
                                   {5.0 / 36 + r15 / 24, 2.0 / 9, 5.0 / 36 - r15 / 24},
                                   {5.0 / 36 + r15 / 30, 2.0 / 9 + r15 / 15, 5.0 / 36}};
    static const double b[3] = {5.0 / 18, 4.0 / 9, 5.0 / 18};
    State3 K[3];
    const State3 f0 = rhs(rs, y[0], y[1]);
    for (auto& k : K) k = f0;
    for (int it = 0; it < 200; ++it) {
        State3 Kn[3];
        double change = 0;
        for (int i = 0; i < 3; ++i) {
            double J = y[0], p = y[1];
            for (int j = 0; j < 3; ++j) {
                J += h * A[i][j] * K[j][0];
                p += h * A[i][j] * K[j][1];
            }
            Kn[i] = rhs(rs, J, p);
            change = std::max({change, std::abs(h * (Kn[i][0] - K[i][0])) / rs.J2,
                               std::abs(h * (Kn[i][1] - K[i][1]))});
        }
        for (int i = 0; i < 3; ++i) K[i] = Kn[i];
        if (change <= 1e-16) break;
    }
    State3 out = y;
    for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 3; ++c) out[c] += h * b[i] * K[i][c];
    return out;
}

State3 step(const ReducedSystem& rs, const State3& y, double h, ReducedScheme sc) {
    return sc == ReducedScheme::Gauss6 ? step_gauss6(rs, y, h) : step_midpoint(rs, y, h);
}

}  // namespace

Trajectory integrate_reduced(const ReducedSystem& rs, double J1, double psi1, double T, double dt,
                             const ReducedRunOptions& opt) {
    if (!(std::abs(dt) > 0)) throw Rejection("time step must be nonzero");
    if (!(T >= 0)) throw Rejection("integration time must be nonnegative");
    if (opt.sample_every < 1) throw Rejection("sample_every must be positive");
    rhs(rs, J1, psi1);  // cone check
    const long n = std::lround(T / std::abs(dt));
    Trajectory tr;
    tr.dt = dt;
    tr.order = opt.scheme == ReducedScheme::Gauss6 ? 6 : 2;
    tr.scheme = to_string(opt.scheme);
    tr.steps = n;
    State3 y{J1, psi1, 0.0};
    const auto record = [&](long i) {
        tr.t.push_back(i * dt);
        tr.x.push_back({y[0], y[1], y[2], 0.0});
        tr.energy.push_back(rs.H(y[0], y[1]));
    };
    record(0);
    for (long i = 1; i <= n; ++i) {
        y = step(rs, y, dt, opt.scheme);
        if (i % opt.sample_every == 0 || i == n) record(i);
    }
    return tr;
}

PeriodResult reduced_period(const ReducedSystem& rs, double J1, double psi1, double max_time,
                            double dt_hint, int steps_per_period, ReducedScheme scheme) {
    const State3 f0 = rhs(rs, J1, psi1);
    // scaled coordinates u = (J1/J2, psi1)
    const double v0 = f0[0] / rs.J2, v1 = f0[1];
    const double slow = std::abs(rs.chi) * rs.J2;
    const double speed = std::hypot(v0, v1);
    if (!(speed > 1e-10 * (slow + std::abs(rs.sigma))))
        throw Rejection("reduced flow starts at an equilibrium");
    double dt = dt_hint;
    if (!(dt > 0)) {
        const double rate = std::max({std::abs(v1), 3.0 * slow, speed});
        dt = 2.0 * pi / (steps_per_period * rate);
    }
    const double H0 = rs.H(J1, psi1);
    const double Hscale = std::max(std::abs(H0), std::abs(rs.chi) * rs.J2 * rs.J2);

    const auto g = [&](const State3& y, int k) {
        return (y[0] / rs.J2 - J1 / rs.J2) * v0 + (y[1] - psi1 - 2.0 * pi * k) * v1;
    };
    const auto dist = [&](const State3& y, int k) {
        return std::hypot(y[0] / rs.J2 - J1 / rs.J2, y[1] - psi1 - 2.0 * pi * k);
    };

    PeriodResult res;
    State3 y{J1, psi1, 0.0};
    double t = 0, maxdist = 0;
    while (t < max_time) {
        const State3 yn = step(rs, y, dt, scheme);
        ++res.steps;
        res.energy_rel_error = std::max(res.energy_rel_error, std::abs(rs.H(yn[0], yn[1]) - H0) / Hscale);
        for (int k = -1; k <= 1; ++k) {
            const double ga = g(y, k), gb = g(yn, k);
            if (!(ga < 0 && gb >= 0)) continue;
            if (dist(yn, k) > 0.1 * maxdist) continue;
            const auto gh = [&](double h) { return g(step(rs, y, h, scheme), k); };
            boost::uintmax_t iters = 100;
            const auto br = boost::math::tools::toms748_solve(
                gh, 0.0, dt, ga, gb, [](double a, double b) { return std::abs(b - a) <= 1e-15 * std::max(1.0, b); },
                iters);
            const double h = 0.5 * (br.first + br.second);
            const State3 yc = step(rs, y, h, scheme);
            res.period = t + h;
            res.wraps = k != 0;
            res.mean_phi1_rate = yc[2] / res.period;
            res.mean_psi1_rate = (yc[1] - psi1) / res.period;
            return res;
        }
        y = yn;
        t += dt;
        maxdist = std::max(maxdist, dist(y, 0));
    }
    throw Rejection("reduced orbit did not close before max_time (near a separatrix?)");
}

// ---- spectra -------------------------------------------------------------------

namespace {

std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

double windowed_magnitude(const std::vector<double>& xw, double omega, double dt) {
    // |sum xw_n exp(-i omega n dt)| via a rotating phasor re-normalised every 1024 steps
    std::complex<double> acc = 0, ph = 1;
    const std::complex<double> rot = std::polar(1.0, -omega * dt);
    for (std::size_t n = 0; n < xw.size(); ++n) {
        if ((n & 1023) == 0) ph = std::polar(1.0, -omega * dt * static_cast<double>(n));
        acc += xw[n] * ph;
        ph *= rot;
    }
    return std::abs(acc);
}

}  // namespace

Spectrum extract_frequencies(const std::vector<double>& signal, double dt, int max_peaks,
                             double min_snr, bool refine) {
    const std::size_t N = signal.size();
    if (N < 16) throw Rejection("signal too short for spectral extraction");
    if (!(dt > 0)) throw Rejection("sampling step must be positive");
    std::vector<double> xw(N);
    double mean = 0;
    for (double v : signal) mean += v;
    mean /= static_cast<double>(N);
    for (std::size_t n = 0; n < N; ++n) {
        const double w = 0.5 * (1.0 - std::cos(2.0 * pi * static_cast<double>(n) / (N - 1)));
        xw[n] = w * (signal[n] - mean);
    }
    const std::size_t M = N / 2 + 1;
    std::vector<double> in(xw);
    fftw_complex* out = fftw_alloc_complex(M);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lk(fftw_plan_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(N), in.data(), out, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::vector<double> mag(M);
    for (std::size_t k = 0; k < M; ++k) mag[k] = std::hypot(out[k][0], out[k][1]);
    {
        std::lock_guard<std::mutex> lk(fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(out);

    Spectrum sp;
    sp.resolution = 2.0 * pi / (static_cast<double>(N) * dt);
    std::vector<double> sorted(mag);
    std::nth_element(sorted.begin(), sorted.begin() + M / 2, sorted.end());
    sp.noise_floor = sorted[M / 2];

    std::vector<std::size_t> cand;
    for (std::size_t k = 1; k + 1 < M; ++k)
        if (mag[k] > mag[k - 1] && mag[k] >= mag[k + 1]) cand.push_back(k);
    std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
    std::vector<std::size_t> taken;
    for (std::size_t k : cand) {
        if (static_cast<int>(taken.size()) >= max_peaks) break;
        bool near = false;
        for (std::size_t t : taken) near = near || (k > t ? k - t : t - k) <= 2;
        if (near) continue;
        if (!(mag[k] > min_snr * sp.noise_floor) || !(mag[k] > 0)) break;
        taken.push_back(k);
        const double a = std::log(mag[k - 1]), b = std::log(mag[k]), c = std::log(mag[k + 1]);
        const double den = a - 2.0 * b + c;
        const double delta = den != 0 ? 0.5 * (a - c) / den : 0.0;
        SpectralPeak pk;
        pk.omega_grid = (static_cast<double>(k) + delta) * sp.resolution;
        pk.omega = pk.omega_grid;
        pk.amplitude = std::exp(b - 0.25 * (a - c) * delta);
        if (refine) {
            const auto obj = [&](double w) { return -windowed_magnitude(xw, w, dt); };
            const auto [w, f] = boost::math::tools::brent_find_minima(
                obj, pk.omega_grid - sp.resolution, pk.omega_grid + sp.resolution, 52);
            pk.omega = w;
            pk.amplitude = -f;
        }
        sp.peaks.push_back(pk);
    }
    if (sp.peaks.empty()) throw Rejection("no spectral peak above the noise floor");
    return sp;
}

SpectralPeak peak_near(const Spectrum& s, double lo, double hi) {
    const SpectralPeak* best = nullptr;
    for (const auto& p : s.peaks)
        if (p.omega >= lo && p.omega <= hi && (!best || p.amplitude > best->amplitude)) best = &p;
    if (!best) throw Rejection("no spectral peak in the requested band");
    return *best;
}

}  // namespace r31

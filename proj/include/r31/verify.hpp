#pragma once

#include <array>
#include <string>
#include <vector>

#include "r31/bnf.hpp"
#include "r31/modal.hpp"

namespace r31 {

// Exact modal Hamiltonian H = |p|^2/2 + sum omega_j^2 q_j^2 / 2 + M3 v^4/4 + N3 y^4/4,
// (v, y) = Phi q.
double exact_energy(const OscillatorSystem& s, const ModalData& m, const std::array<double, 4>& x);

enum class ExactScheme {
    Verlet,        // kick-drift-kick on the kinetic/potential split
    RotationKick,  // half kick, exact harmonic rotation, half kick
};
const char* to_string(ExactScheme s);
ExactScheme exact_scheme_from_string(const std::string& s);

struct Trajectory {
    std::vector<double> t;
    std::vector<std::array<double, 4>> x;  // exact: (q1, q2, p1, p2); reduced: (J1, psi1, phi1, 0)
    std::vector<double> energy;
    double dt = 0;
    int order = 2;
    std::string scheme;
    long steps = 0;
};

struct ExactRunOptions {
    ExactScheme scheme = ExactScheme::RotationKick;
    int sample_every = 1;
    bool record_energy = true;
    double blowup = 1e6;
};

// State x = (q1, q2, p1, p2) in modal coordinates. dt < 0 integrates backwards.
// Throws Rejection if |state| exceeds opt.blowup or dt does not resolve the fast period.
Trajectory integrate_exact(const OscillatorSystem& s, const ModalData& m,
                           const std::array<double, 4>& init, double T, double dt,
                           const ExactRunOptions& opt = {});

// Largest step allowed by integrate_exact: 2 pi / (40 omega_+).
double default_exact_dt(const ModalData& m);

struct EnergyStats {
    double max_rel_deviation = 0;  // max |H - H0| / |H0|
    double secular_drift = 0;      // |mean(last window) - mean(first window)| / |H0|
};
// Windows are a fraction `window` of the run each.
EnergyStats energy_stats(const Trajectory& tr, double window = 0.1);

// ---- reduced resonant flow --------------------------------------------------

// H(J1, psi1) = sigma J1 + G20 I1^2 + G11 I1 J1 + G02 J1^2 + sqrt3 chi sqrt(I1^3 J1) cos psi1,
// I1 = J2 - 3 J1; phi1 (the acoustic angle) obeys phi1' = omega_- + dH/dJ2.
struct ReducedSystem {
    double sigma = 0, g20 = 0, g11 = 0, g02 = 0, chi = 0;  // chi signed
    double omega_minus = 0;
    double J2 = 0;

    double H(double J1, double psi1) const;
    double dH_dJ1(double J1, double psi1) const;
    double dH_dpsi(double J1, double psi1) const;
    double dH_dJ2(double J1, double psi1) const;
};
ReducedSystem reduced_system(const QuarticCoeffs& q, const ModalData& m, double J2);

enum class ReducedScheme { ImplicitMidpoint, Gauss6 };
const char* to_string(ReducedScheme s);

struct ReducedRunOptions {
    ReducedScheme scheme = ReducedScheme::Gauss6;
    int sample_every = 1;
};

Trajectory integrate_reduced(const ReducedSystem& rs, double J1, double psi1, double T, double dt,
                             const ReducedRunOptions& opt = {});

struct PeriodResult {
    double period = 0;
    bool wraps = false;        // psi1 advanced by 2 pi (orbit winds around the cylinder)
    double mean_phi1_rate = 0;  // acoustic frequency averaged over one period
    double mean_psi1_rate = 0;
    double energy_rel_error = 0;  // max |H - H0| / max(|H0|, chi J2^2) over the orbit
    long steps = 0;
};

// Integrates from (J1, psi1) until psi1 returns to its initial value modulo 2 pi
// with the same direction; the crossing is refined on the step size.
// dt_hint <= 0 picks 2 pi / (steps_per_period * |rate|) from the initial psi1 rate and
// the slow scale chi J2. Throws Rejection on an equilibrium start or if no return
// happens before max_time.
PeriodResult reduced_period(const ReducedSystem& rs, double J1, double psi1, double max_time,
                            double dt_hint = 0, int steps_per_period = 4000,
                            ReducedScheme scheme = ReducedScheme::Gauss6);

// ---- spectral extraction ----------------------------------------------------

struct SpectralPeak {
    double omega = 0;      // angular frequency
    double amplitude = 0;  // windowed magnitude at the peak
    double omega_grid = 0;  // quadratic log-magnitude estimate before refinement
};

struct Spectrum {
    std::vector<SpectralPeak> peaks;  // descending amplitude
    double resolution = 0;            // bin width 2 pi / T
    double noise_floor = 0;           // median magnitude
};

// Hann-windowed FFT of a uniformly sampled signal with quadratic interpolation of the
// log-magnitude around each local maximum, then refinement of the windowed
// transform's maximum within one bin. Throws Rejection if no peak exceeds
// `min_snr` times the noise floor.
Spectrum extract_frequencies(const std::vector<double>& signal, double dt, int max_peaks = 4,
                             double min_snr = 100.0, bool refine = true);

// Strongest peak inside [lo, hi].
SpectralPeak peak_near(const Spectrum& s, double lo, double hi);

}  // namespace r31

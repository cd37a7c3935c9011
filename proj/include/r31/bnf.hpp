#pragma once

#include <array>
#include <complex>

#include "r31/modal.hpp"

namespace r31 {

struct QuarticCoeffs {
    // f[i] = f_{i,4-i}: coefficient of q1^i q2^(4-i) in the quartic potential
    std::array<double, 5> f{};
    double g2020 = 0, g1111 = 0, g0202 = 0;
    double f31 = 0;
    double chi = 0;  // signed, as produced by the mode-shape sign convention

    double fij(int i, int /*j = 4 - i*/) const { return f[i]; }
    bool degenerate_coupling() const;
};

QuarticCoeffs quartic_coeffs(const ModalData& m, double M3, double N3);

// Throws Rejection when chi vanishes (the resonant pipeline is undefined).
void require_coupling(const QuarticCoeffs& q);

/// Parameters of F(psi,x) = a2 x^2/2 + a1 x + sqrt((1-x)^3 x) cos psi.
///
/// chi is stored as |chi|. If the raw coefficient is negative, the physical
/// slow angle psi1 maps to psi1 + psi_shift with psi_shift = pi.
struct EffectiveParams {
    double a0 = 0, a1 = 0, a2 = 0;
    double J2 = 1;
    double sigma = 0;
    double chi = 1;
    double psi_shift = 0;
};

EffectiveParams effective_params(const QuarticCoeffs& q, const ModalData& m, double J2);

// Bare (a1, a2) pair for portrait-only work.
EffectiveParams make_params(double a1, double a2);

double a_of(const EffectiveParams& p, double x);
double b_of(double x);
double db_of(double x);   // b'(x) = (1-4x) sqrt(1-x) / (2 sqrt x)
double d2b_of(double x);  // b''(x)

double F_eval(const EffectiveParams& p, double psi, double x);

// N + G in complex coordinates z_j = (Q_j + i P_j)/sqrt2.
double hamiltonian_energy(const OscillatorSystem& s, const ModalData& m, std::complex<double> z1,
                          std::complex<double> z2);

// omega_- J2 + sigma J1 + H4res(J, psi1) with the raw (signed) coupling.
double truncated_resonant_energy(const QuarticCoeffs& q, const ModalData& m, double J1, double J2,
                                 double psi1);

// sigma J1 + H4res, the part identified with chi J2^2 (F + a0).
double reduced_hamiltonian(const QuarticCoeffs& q, const ModalData& m, double J1, double J2,
                           double psi1);

}  // namespace r31

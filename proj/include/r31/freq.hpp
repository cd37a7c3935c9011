#pragma once

#include <string>

#include "r31/bnf.hpp"
#include "r31/modal.hpp"
#include "r31/portrait.hpp"

namespace r31 {

// Desingularised quadrature of int W dx and int x W dx over [x_lo, x_hi]
// (W = 1/(pi sqrt(-P))), using x = x_lo + (x_hi-x_lo) sin^2(theta) and the
// quartic deflated by both endpoints.
double int_W_quadrature(double a1, double a2, double E, double x_lo, double x_hi, bool times_x);

// Integral of psi(x;E) over the pair, the building block of every area.
double psi_integral(const EffectiveParams& p, double E, const RootPair& pr);

// Normalised area A(E) of the level curve in the given region.
double area(const EffectiveParams& p, double E, Region region);

struct ActionChart {
    Region region = Region::I;
    Zone zone = Zone::Z10;
    double E = 0, I2 = 0;
    double area = 0;
    double dA_dE = 0, dA_dI2 = 0;
    int sign_used = 0;
    double int_W = 0, int_xW = 0;
    RootPair pair;
    int root_count = 0;
    bool closed_form = true;  // false when the quadrature fallback was used
};

// Area and its derivatives. I2 is taken from p.J2; dA_dI2 uses p.sigma and p.chi.
ActionChart action_chart(const EffectiveParams& p, double E, Region region);

enum class Regime { Nonresonant, ResonantGeneric, ResonantExact };
const char* to_string(Regime r);

// How the acoustic resonant frequency is assembled.
//   Literal: omega_- + chi I2 (2(E+a0) - I2 dA_dI2 / dA_dE)
//   ActionConsistent: adds -A/dA_dE inside the bracket, i.e. the derivative of
//   the energy in I2 at fixed I1 = I2 A/3.
enum class FrequencyForm { Literal, ActionConsistent };
const char* to_string(FrequencyForm f);
FrequencyForm frequency_form_from_string(const std::string& s);

struct FrequencyPair {
    double w_minus = 0, w_plus = 0;
    Regime regime = Regime::Nonresonant;
    double E = 0, I2 = 0;
    double a_minus = 0, a_plus = 0;
    // resonant provenance
    Zone zone = Zone::Z10;
    Region region = Region::I;
    int sign_used = 0;
    double omega1 = 0;  // slow-angle frequency 3 chi I2 / dA_dE
    double dA_dE = 0, dA_dI2 = 0, area = 0;
};

struct FreqOptions {
    FrequencyForm form = FrequencyForm::ActionConsistent;
    double tau_sigma_rel = 1e-12;  // |sigma| < tau * omega_- selects the exact-resonance formulas
};

FrequencyPair frequencies_resonant(const EffectiveParams& p, double E, Region region,
                                   const ModalData& m, const QuarticCoeffs& q,
                                   const FreqOptions& opt = {});

// Nonresonant corrections omega_- + 2 G2020 I1 + G1111 I2, omega_+ + G1111 I1 + 2 G0202 I2
// with mode actions I = omega a^2 / 2.
FrequencyPair frequencies_nonresonant(const QuarticCoeffs& q, const ModalData& m, double a_minus,
                                      double a_plus);

// The same correction written directly in N3 and the mode shapes (valid for M3 = 0).
std::pair<double, double> nonresonant_formula_sl1(const ModalData& m, double N3, double a_minus,
                                                  double a_plus);

struct ChartEntry {
    EffectiveParams params;
    PortraitSummary summary;
    double E = 0, I2 = 0, x_dagger = 0;
    Line line = Line::Zero;
    Region region = Region::I;
};

// Initial phases zero: I2 = (omega_- a_-^2 + 3 omega_+ a_+^2)/2, x = 3 omega_+ a_+^2 / (2 I2),
// and E = F(psi_shift, x).
ChartEntry amplitudes_to_chart(double a_minus, double a_plus, const QuarticCoeffs& q,
                               const ModalData& m, double tau_zone = 1e-9, double tau_E = -1);

}  // namespace r31

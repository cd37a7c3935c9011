#pragma once

#include <array>

namespace r31 {

/// Two cubically coupled oscillators: M (v'', y'') + K (v, y) = -(M3 v^3, N3 y^3).
struct OscillatorSystem {
    double m11 = 1, m12 = 0, m22 = 1;
    double k1 = 1, k2 = 1;
    double cubic_v = 0;  // M3
    double cubic_y = 0;  // N3

    void validate() const;
};

inline constexpr double kD12 = 0.0815599;
inline constexpr double kD22 = 12.48;
inline constexpr double kD66 = 0.0000247357;

struct HoneycombParams {
    double Mtilde = 0.2, Ktilde = 1.1;
    double k1 = 0, k2 = 0;
    double D12 = kD12, D22 = kD22, D66 = kD66;
    double N3 = -1e4;
    // When true the plate entry of the mass matrix is M_H + Mtilde (plate plus
    // attached resonator mass, with y the relative resonator motion). When
    // false it is M_H alone.
    bool lumped_plate_mass = true;
};

double honeycomb_mass(double k1, double k2);
double honeycomb_stiffness(double k1, double k2, double D12 = kD12, double D22 = kD22,
                           double D66 = kD66);

// Closed Brillouin triangle with vertices (0,0), (4pi/3,0), (pi,pi/sqrt3).
bool in_brillouin_triangle(double k1, double k2, double tol = 1e-12);

OscillatorSystem honeycomb_system(const HoneycombParams& p);

struct ModalData {
    // phi[row][col]: row 0 = v, row 1 = y; col 0 = acoustic (-), col 1 = optical (+)
    std::array<std::array<double, 2>, 2> phi{};
    double omega_minus = 0, omega_plus = 0;
    double sigma = 0;

    double phi1m() const { return phi[0][0]; }
    double phi1p() const { return phi[0][1]; }
    double phi2m() const { return phi[1][0]; }
    double phi2p() const { return phi[1][1]; }
};

ModalData diagonalize(const OscillatorSystem& s);

// c(q) = -Phi^T (M3 (Phi q)_1^3, N3 (Phi q)_2^3) stored as coefficients of
// q1^3, q1^2 q2, q1 q2^2, q2^3.
struct CubicField {
    std::array<double, 4> c1{}, c2{};
    std::array<double, 2> eval(double q1, double q2) const;
};

CubicField modal_cubic(const OscillatorSystem& s, const ModalData& m);

}  // namespace r31

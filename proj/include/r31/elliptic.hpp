#pragma once

#include <array>
#include <complex>

namespace r31 {

// Carlson symmetric forms (duplication algorithm).
double carlson_rc(double x, double y);
double carlson_rf(double x, double y, double z);
double carlson_rj(double x, double y, double z, double p);

// Complete integrals in parameter convention: K(m) = int_0^1 ds / sqrt((1-s^2)(1-m s^2)).
double elliptic_K(double m);
double elliptic_Pi(double n, double m);
// Pi(n,m) - K(m), computed without cancellation for small n.
double elliptic_Pi_minus_K(double n, double m);

/// Moebius map T(z) = (Az+B)/(Cz+D) sending 1/k, 1, -1, -1/k to x1 < x2 < x3 < x4.
struct MoebiusReal4 {
    double x[4]{};
    double A = 0, B = 0, C = 0, D = 0;
    double k = 0, lambda = 0, c = 0, m1 = 0;
    bool c_zero = false;
    double a_shift = 0, b_scale = 0, n1 = 0;  // only meaningful when !c_zero

    double T(double z) const { return (A * z + B) / (C * z + D); }
};

// lead is the leading coefficient of the quartic, 1 + a2^2/4.
MoebiusReal4 moebius_real4(double x1, double x2, double x3, double x4, double lead);

enum class Branch { Lower, Upper };  // (x1,x2) or (x3,x4)

// Integrals of W = 1/(pi sqrt(-P)) and x W over the chosen branch.
double int_W_real4(const MoebiusReal4& mb);
double int_xW_real4(const MoebiusReal4& mb, Branch br);

/// Moebius map with T(1) = x1, T(-1) = x2 and T(+-1/k*) the conjugate pair.
struct MoebiusComplex2 {
    double x1 = 0, x2 = 0;
    std::complex<double> x3{};
    double A = 0, B = 0, C = 0, D = 0;
    std::complex<double> k{};  // purely imaginary
    double k2 = 0;             // k*^2 < 0
    double c = 0;
    double n = 0;  // C^2/D^2

    double T(double z) const { return (A * z + B) / (C * z + D); }
};

MoebiusComplex2 moebius_complex2(double x1, double x2, std::complex<double> x3, double lead);

double int_W_complex2(const MoebiusComplex2& mb);
double int_xW_complex2(const MoebiusComplex2& mb);
// int xW / int W, the combination entering the frequency correction.
double xW_over_W_complex2(const MoebiusComplex2& mb);

}  // namespace r31

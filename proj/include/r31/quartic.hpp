#pragma once

#include <array>
#include <complex>
#include <vector>

#include "r31/common.hpp"

namespace r31 {

// Roots of P(x;E) = (a2 x^2/2 + a1 x - E)^2 - (1-x)^3 x lying in (0,1).
struct QuarticRoots {
    std::vector<double> xs;      // increasing
    std::vector<Line> line_of;   // psi line of each x root
    std::vector<double> ts;      // t preimages, same order as xs
    int count = 0;
    double delta_plus = 0, delta_minus = 0;
    double s_star = 0;
    bool near_degenerate = false;
    bool from_oracle = false;
    bool quadratic_case = false;
    // the non-real pair when count == 2 (imaginary part > 0; its conjugate is implied)
    bool has_complex_pair = false;
    std::complex<double> x_complex{};
};

struct QuarticTolerances {
    double tau_lead = 1e-10;   // scaled by (1+|E|)
    double tau_delta = 1e-10;
};

// Coefficients c[0..4] of P(x;E) in ascending powers.
std::array<double, 5> quartic_x_coeffs(double a1, double a2, double E);
double quartic_x_eval(double a1, double a2, double E, double x);

// Closed-form roots via the depressed quartic in t (x = t^2/(1+t^2)).
// t-space output: ts holds all real t roots, xs the matching x values.
QuarticRoots roots_t(double a1, double a2, double E, const QuarticTolerances& tol = {});

// Same roots ordered as x_1 < x_2 (< x_3 < x_4), restricted to (0,1).
// Falls back to roots_oracle (and flags near_degenerate) when the closed form
// is ill-conditioned.
QuarticRoots roots_x(double a1, double a2, double E, const QuarticTolerances& tol = {});

// Companion-matrix eigenvalues of the expanded quartic in x.
QuarticRoots roots_oracle(double a1, double a2, double E);

}  // namespace r31

#include "r31/modal.hpp"

#include <cmath>
#include <sstream>

#include "r31/common.hpp"

namespace r31 {

namespace {

// sin(c t) / t with the removable singularity at t = 0
double sinc_scaled(double c, double t) {
    if (std::abs(t) < 1e-8) return c * (1.0 - c * c * t * t / 6.0);
    return std::sin(c * t) / t;
}

}  // namespace

void OscillatorSystem::validate() const {
    const double det = m11 * m22 - m12 * m12;
    if (!(m11 > 0) || !(det > 0)) {
        std::ostringstream os;
        os << "mass matrix is not positive definite (m11=" << m11 << ", det=" << det << ")";
        throw Rejection(os.str());
    }
    if (!(k1 > 0) || !(k2 > 0)) {
        std::ostringstream os;
        os << "stiffness matrix is not positive definite (k1=" << k1 << ", k2=" << k2 << ")";
        throw Rejection(os.str());
    }
}

double honeycomb_mass(double k1, double k2) {
    const double u = k1;
    const double v = k1 + std::sqrt(3.0) * k2;
    return 4.0 * std::sqrt(3.0) * sinc_scaled(0.5, u) * sinc_scaled(0.25, v);
}

double honeycomb_stiffness(double k1, double k2, double D12, double D22, double D66) {
    const double k1s = k1 * k1, k2s = k2 * k2;
    return honeycomb_mass(k1, k2) *
           (k1s * k1s + 2.0 * k1s * k2s * (D12 + 2.0 * D66) + k2s * k2s * D22);
}

bool in_brillouin_triangle(double k1, double k2, double tol) {
    // Edges: k2 >= 0, k2 <= k1/sqrt3 (Gamma-M), and the X-M edge.
    const double s3 = std::sqrt(3.0);
    if (k2 < -tol) return false;
    if (k2 - k1 / s3 > tol) return false;
    // X-M line through (4pi/3,0) and (pi,pi/sqrt3): k1 + k2/sqrt3 = 4pi/3
    if (k1 + k2 / s3 - 4.0 * pi / 3.0 > tol) return false;
    return true;
}

OscillatorSystem honeycomb_system(const HoneycombParams& p) {
    if (!(p.Mtilde > 0) || !(p.Ktilde > 0))
        throw Rejection("honeycomb resonator mass and stiffness must be positive");
    if (!in_brillouin_triangle(p.k1, p.k2, 1e-9))
        throw Rejection("wave numbers outside the irreducible Brillouin triangle");
    const double MH = honeycomb_mass(p.k1, p.k2);
    OscillatorSystem s;
    s.m11 = p.lumped_plate_mass ? MH + p.Mtilde : MH;
    s.m12 = p.Mtilde;
    s.m22 = p.Mtilde;
    s.k1 = honeycomb_stiffness(p.k1, p.k2, p.D12, p.D22, p.D66);
    s.k2 = p.Ktilde;
    s.cubic_v = 0;
    s.cubic_y = p.N3;
    if (!p.lumped_plate_mass && MH <= p.Mtilde) {
        std::ostringstream os;
        os << "degenerate wave numbers: M_H=" << MH << " <= Mtilde=" << p.Mtilde;
        throw Rejection(os.str());
    }
    return s;
}

ModalData diagonalize(const OscillatorSystem& s) {
    s.validate();
    const double detM = s.m11 * s.m22 - s.m12 * s.m12;
    // det(K - lambda M) = detM lambda^2 - (k1 m22 + k2 m11) lambda + k1 k2
    const double b = s.k1 * s.m22 + s.k2 * s.m11;
    const double c = s.k1 * s.k2;
    const double disc = std::max(0.0, b * b - 4.0 * detM * c);
    const double lp = (b + std::sqrt(disc)) / (2.0 * detM);
    const double lm = c / (detM * lp);
    if ((lp - lm) < 1e-10 * lp) throw Rejection("double eigenvalue: omega_- == omega_+");

    ModalData m;
    const double lam[2] = {lm, lp};
    for (int col = 0; col < 2; ++col) {
        const double l = lam[col];
        double va[2] = {l * s.m12, s.k1 - l * s.m11};
        double vb[2] = {s.k2 - l * s.m22, l * s.m12};
        const double na = std::hypot(va[0], va[1]), nb = std::hypot(vb[0], vb[1]);
        double* v = na >= nb ? va : vb;
        const double norm2 = v[0] * v[0] * s.m11 + 2.0 * v[0] * v[1] * s.m12 + v[1] * v[1] * s.m22;
        const double inv = 1.0 / std::sqrt(norm2);
        double v0 = v[0] * inv, v1 = v[1] * inv;
        if (v1 < 0 || (v1 == 0 && v0 < 0)) {
            v0 = -v0;
            v1 = -v1;
        }
        m.phi[0][col] = v0;
        m.phi[1][col] = v1;
    }
    m.omega_minus = std::sqrt(lm);
    m.omega_plus = std::sqrt(lp);
    m.sigma = m.omega_plus - 3.0 * m.omega_minus;
    return m;
}

std::array<double, 2> CubicField::eval(double q1, double q2) const {
    auto poly = [&](const std::array<double, 4>& c) {
        return c[0] * q1 * q1 * q1 + c[1] * q1 * q1 * q2 + c[2] * q1 * q2 * q2 + c[3] * q2 * q2 * q2;
    };
    return {poly(c1), poly(c2)};
}

CubicField modal_cubic(const OscillatorSystem& s, const ModalData& m) {
    // (a q1 + b q2)^3 = a^3 q1^3 + 3a^2 b q1^2 q2 + 3 a b^2 q1 q2^2 + b^3 q2^3
    auto cube = [](double a, double b) {
        return std::array<double, 4>{a * a * a, 3 * a * a * b, 3 * a * b * b, b * b * b};
    };
    const auto v3 = cube(m.phi1m(), m.phi1p());
    const auto y3 = cube(m.phi2m(), m.phi2p());
    CubicField f;
    for (int i = 0; i < 4; ++i) {
        f.c1[i] = -(m.phi1m() * s.cubic_v * v3[i] + m.phi2m() * s.cubic_y * y3[i]);
        f.c2[i] = -(m.phi1p() * s.cubic_v * v3[i] + m.phi2p() * s.cubic_y * y3[i]);
    }
    return f;
}

}  // namespace r31

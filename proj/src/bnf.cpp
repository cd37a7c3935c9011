#include "r31/bnf.hpp"

#include <cmath>

#include "r31/common.hpp"

namespace r31 {

namespace {
constexpr double kFact[5] = {1, 1, 2, 6, 24};
}

bool QuarticCoeffs::degenerate_coupling() const { return std::abs(chi) < 1e-14; }

QuarticCoeffs quartic_coeffs(const ModalData& m, double M3, double N3) {
    QuarticCoeffs q;
    for (int i = 0; i <= 4; ++i) {
        const int j = 4 - i;
        q.f[i] = 6.0 / (kFact[i] * kFact[j]) *
                 (std::pow(m.phi1m(), i) * std::pow(m.phi1p(), j) * M3 +
                  std::pow(m.phi2m(), i) * std::pow(m.phi2p(), j) * N3);
    }
    const double wm = m.omega_minus, wp = m.omega_plus;
    q.g2020 = 3.0 * q.f[4] / (2.0 * wm * wm);
    q.g1111 = q.f[2] / (wm * wp);
    q.g0202 = 3.0 * q.f[0] / (2.0 * wp * wp);
    q.f31 = q.f[3];
    q.chi = q.f31 / (2.0 * std::sqrt(3.0) * std::pow(wm, 1.5) * std::sqrt(wp));
    return q;
}

void require_coupling(const QuarticCoeffs& q) {
    if (q.degenerate_coupling())
        throw Rejection("degenerate coupling: chi = 0, resonant normal form undefined");
}

EffectiveParams effective_params(const QuarticCoeffs& q, const ModalData& m, double J2) {
    require_coupling(q);
    if (!(J2 > 0)) throw Rejection("J2 must be positive");
    EffectiveParams p;
    const double chi = std::abs(q.chi);
    p.chi = chi;
    p.psi_shift = q.chi < 0 ? pi : 0.0;
    p.J2 = J2;
    p.sigma = m.sigma;
    p.a0 = q.g2020 / chi;
    p.a1 = -2.0 * q.g2020 / chi + q.g1111 / (3.0 * chi) + m.sigma / (3.0 * J2 * chi);
    p.a2 = 2.0 * q.g2020 / chi - 2.0 * q.g1111 / (3.0 * chi) + 2.0 * q.g0202 / (9.0 * chi);
    return p;
}

EffectiveParams make_params(double a1, double a2) {
    EffectiveParams p;
    p.a1 = a1;
    p.a2 = a2;
    return p;
}

double a_of(const EffectiveParams& p, double x) { return 0.5 * p.a2 * x * x + p.a1 * x; }

double b_of(double x) {
    const double u = 1.0 - x;
    return std::sqrt(u * u * u * x);
}

double db_of(double x) { return (1.0 - 4.0 * x) * std::sqrt(1.0 - x) / (2.0 * std::sqrt(x)); }

double d2b_of(double x) {
    return (8.0 * x * x - 4.0 * x - 1.0) / (4.0 * x * std::sqrt(x) * std::sqrt(1.0 - x));
}

double F_eval(const EffectiveParams& p, double psi, double x) {
    if (!(x > 0 && x < 1)) throw Rejection("F_eval: x outside (0,1)");
    return a_of(p, x) + b_of(x) * std::cos(psi);
}

double hamiltonian_energy(const OscillatorSystem& s, const ModalData& m, std::complex<double> z1,
                          std::complex<double> z2) {
    const double wm = m.omega_minus, wp = m.omega_plus;
    const double N = wm * std::norm(z1) + wp * std::norm(z2);
    // G = f(q) with q_j = (z_j + conj z_j)/sqrt(2 omega_j)
    const double q1 = 2.0 * z1.real() / std::sqrt(2.0 * wm);
    const double q2 = 2.0 * z2.real() / std::sqrt(2.0 * wp);
    const double v = m.phi1m() * q1 + m.phi1p() * q2;
    const double y = m.phi2m() * q1 + m.phi2p() * q2;
    const double G = 0.25 * s.cubic_v * v * v * v * v + 0.25 * s.cubic_y * y * y * y * y;
    return N + G;
}

double reduced_hamiltonian(const QuarticCoeffs& q, const ModalData& m, double J1, double J2,
                           double psi1) {
    const double I1 = J2 - 3.0 * J1;
    if (!(J1 > 0) || !(I1 > 0)) throw Rejection("action cone violated: need J2 > 3 J1 > 0");
    const double res = std::sqrt(3.0) * q.chi * std::sqrt(I1 * I1 * I1 * J1) * std::cos(psi1);
    return m.sigma * J1 + q.g2020 * I1 * I1 + q.g1111 * I1 * J1 + q.g0202 * J1 * J1 + res;
}

double truncated_resonant_energy(const QuarticCoeffs& q, const ModalData& m, double J1, double J2,
                                 double psi1) {
    return m.omega_minus * J2 + reduced_hamiltonian(q, m, J1, J2, psi1);
}

}  // namespace r31

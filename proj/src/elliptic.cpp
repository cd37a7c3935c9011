#include "r31/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "r31/common.hpp"

namespace r31 {

double carlson_rc(double x, double y) {
    // y > 0 assumed (the only case used here)
    constexpr double tol = 1e-4;  // error ~ tol^6
    double xn = x, yn = y, w = 1.0;
    if (y < 0) {
        xn = x - y;
        yn = -y;
        w = std::sqrt(x) / std::sqrt(xn);
    }
    for (int it = 0; it < 100; ++it) {
        const double lam = 2.0 * std::sqrt(xn) * std::sqrt(yn) + yn;
        xn = 0.25 * (xn + lam);
        yn = 0.25 * (yn + lam);
        const double ave = (xn + yn + yn) / 3.0;
        const double s = (yn - ave) / ave;
        if (std::abs(s) < tol) {
            return w * (1.0 + s * s * (0.3 + s * (1.0 / 7.0 + s * (0.375 + s * 9.0 / 22.0)))) /
                   std::sqrt(ave);
        }
    }
    throw InternalError("carlson_rc did not converge");
}

double carlson_rf(double x, double y, double z) {
    if (std::min({x, y, z}) < 0 || std::min({x + y, x + z, y + z}) <= 0)
        throw Rejection("carlson_rf: invalid arguments");
    double xn = x, yn = y, zn = z;
    for (int it = 0; it < 200; ++it) {
        const double sx = std::sqrt(xn), sy = std::sqrt(yn), sz = std::sqrt(zn);
        const double lam = sx * (sy + sz) + sy * sz;
        xn = 0.25 * (xn + lam);
        yn = 0.25 * (yn + lam);
        zn = 0.25 * (zn + lam);
        const double mu = (xn + yn + zn) / 3.0;
        const double dx = 1.0 - xn / mu, dy = 1.0 - yn / mu, dz = 1.0 - zn / mu;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < 1e-4) {
            const double e2 = dx * dy - dz * dz;
            const double e3 = dx * dy * dz;
            return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(mu);
        }
    }
    throw InternalError("carlson_rf did not converge");
}

double carlson_rj(double x, double y, double z, double p) {
    if (std::min({x, y, z}) < 0 || std::min({x + y, x + z, y + z}) <= 0 || !(p > 0))
        throw Rejection("carlson_rj: invalid arguments");
    double xn = x, yn = y, zn = z, pn = p;
    double sum = 0.0, fac = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double sx = std::sqrt(xn), sy = std::sqrt(yn), sz = std::sqrt(zn);
        const double lam = sx * (sy + sz) + sy * sz;
        const double alpha = std::pow(pn * (sx + sy + sz) + sx * sy * sz, 2);
        const double beta = pn * std::pow(pn + lam, 2);
        sum += fac * carlson_rc(alpha, beta);
        fac *= 0.25;
        xn = 0.25 * (xn + lam);
        yn = 0.25 * (yn + lam);
        zn = 0.25 * (zn + lam);
        pn = 0.25 * (pn + lam);
        const double mu = 0.2 * (xn + yn + zn + pn + pn);
        const double dx = (mu - xn) / mu, dy = (mu - yn) / mu, dz = (mu - zn) / mu;
        const double dp = (mu - pn) / mu;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz), std::abs(dp)}) < 1e-4) {
            const double ea = dx * (dy + dz) + dy * dz;
            const double eb = dx * dy * dz;
            const double ec = dp * dp;
            const double e2 = ea - 3.0 * ec;
            const double e3 = eb + 2.0 * dp * (ea - ec);
            const double e4 = (2.0 * eb + ea * dp) * dp;
            const double e5 = eb * dp * dp;
            const double series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 -
                                  3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
            return 3.0 * sum + fac * series / (mu * std::sqrt(mu));
        }
    }
    throw InternalError("carlson_rj did not converge");
}

double elliptic_K(double m) {
    if (!(m < 1)) throw Rejection("elliptic_K requires m < 1");
    return carlson_rf(0.0, 1.0 - m, 1.0);
}

double elliptic_Pi_minus_K(double n, double m) {
    if (!(m < 1) || !(n < 1)) throw Rejection("elliptic_Pi requires n < 1 and m < 1");
    if (n == 0) return 0.0;
    return n / 3.0 * carlson_rj(0.0, 1.0 - m, 1.0, 1.0 - n);
}

double elliptic_Pi(double n, double m) { return elliptic_K(m) + elliptic_Pi_minus_K(n, m); }

MoebiusReal4 moebius_real4(double x1, double x2, double x3, double x4, double lead) {
    if (!(x1 < x2 && x2 < x3 && x3 < x4)) throw Rejection("moebius_real4: roots not increasing");
    const double gap = std::min({x2 - x1, x3 - x2, x4 - x3});
    if (gap < 1e-8) throw Rejection("moebius_real4: coincident roots");
    MoebiusReal4 mb;
    mb.x[0] = x1;
    mb.x[1] = x2;
    mb.x[2] = x3;
    mb.x[3] = x4;
    mb.lambda = (x2 - x1) * (x4 - x3) / ((x3 - x1) * (x4 - x2));
    const double sl = std::sqrt(mb.lambda);
    const double k = (1.0 - sl) / (1.0 + sl);
    mb.k = k;
    mb.m1 = 1.0 - k * k;
    const double k2 = k * k;
    mb.A = -k * x1 * x3 - k2 * x1 * x3 + 2 * k * x1 * x4 - k * x3 * x4 + k2 * x3 * x4;
    mb.B = -x1 * x3 - k * x1 * x3 + 2 * k * x1 * x4 + x3 * x4 - k * x3 * x4;
    mb.C = k * x1 - k2 * x1 - 2 * k * x3 + k * x4 + k2 * x4;
    mb.D = -x1 + k * x1 - 2 * k * x3 + x4 + k * x4;
    // C vanishes exactly when (x2-x1)(x3-x1) = (x4-x2)(x4-x3)
    const double lhs = (x2 - x1) * (x3 - x1), rhs = (x4 - x2) * (x4 - x3);
    mb.c_zero = std::abs(lhs - rhs) <= 1e-14 * std::max(lhs, rhs);
    if (mb.c_zero) mb.C = 0.0;
    double prod = lead / k2;
    for (double xj : mb.x) prod *= (mb.A - mb.C * xj);
    mb.c = prod;
    if (!mb.c_zero) {
        mb.a_shift = mb.D / mb.C;
        mb.b_scale = (mb.B * mb.C - mb.A * mb.D) / (mb.C * mb.C);
        const double a2 = mb.a_shift * mb.a_shift;
        mb.n1 = mb.m1 * a2 / (a2 - 1.0);
    }
    if (!(mb.c > 0) || !(mb.A * mb.D - mb.B * mb.C < 0))
        throw InternalError("moebius_real4: sign invariants violated");
    return mb;
}

double int_W_real4(const MoebiusReal4& mb) {
    return (mb.B * mb.C - mb.A * mb.D) / (pi * std::sqrt(mb.c)) * elliptic_K(mb.m1);
}

double int_xW_real4(const MoebiusReal4& mb, Branch br) {
    const double A = mb.A, B = mb.B, C = mb.C, D = mb.D, k = mb.k;
    const double bcad = B * C - A * D;
    const double K = elliptic_K(mb.m1);
    // Written in terms of A..D so that C -> 0 is regular:
    //   J = (B/D) K -+ bcad pi / (2 sqrt((D^2-C^2)(D^2 k^2 - C^2))) + bcad C Pi(n1) / (D (D^2-C^2))
    // with the minus sign on the lower branch.
    const double D2 = D * D, C2 = C * C;
    const double sq = std::sqrt((D2 - C2) * (D2 * k * k - C2));
    const double sgn = br == Branch::Lower ? -1.0 : 1.0;
    double J = (B / D) * K + sgn * bcad * pi / (2.0 * sq);
    if (C != 0.0) {
        const double n1 = mb.m1 * D2 / (D2 - C2);
        J += bcad * C * elliptic_Pi(n1, mb.m1) / (D * (D2 - C2));
    }
    return bcad / (pi * std::sqrt(mb.c)) * J;
}

MoebiusComplex2 moebius_complex2(double x1, double x2, std::complex<double> x3, double lead) {
    using cd = std::complex<double>;
    if (!(x1 < x2)) throw Rejection("moebius_complex2: real roots not increasing");
    if (x2 - x1 < 1e-8) throw Rejection("moebius_complex2: coincident real roots");
    if (x3.imag() < 0) x3 = std::conj(x3);
    if (!(x3.imag() > 1e-10 * (1.0 + std::abs(x3)))) throw Rejection("moebius_complex2: pair is not complex");
    const cd x4 = std::conj(x3);
    MoebiusComplex2 mb;
    mb.x1 = x1;
    mb.x2 = x2;
    mb.x3 = x3;
    const cd w = (cd(x1) - x4) * (cd(x2) - x3);
    const cd sl = std::abs(w) / w;
    const cd k = (1.0 - sl) / (1.0 + sl);
    mb.k = k;
    const cd A = -x2 * (x3 + x4) + k * x2 * (x4 - x3) + 2.0 * x3 * x4;
    const cd B = -x2 * (x3 + x4) + x2 * (x4 - x3) / k + 2.0 * x3 * x4;
    const cd C = -2.0 * x2 + x3 + x4 + k * (x4 - x3);
    const cd D = -2.0 * x2 + x3 + x4 + (x4 - x3) / k;
    const double scale = std::max({std::abs(A), std::abs(B), std::abs(C), std::abs(D)});
    const double im = std::max({std::abs(A.imag()), std::abs(B.imag()), std::abs(C.imag()),
                                std::abs(D.imag())});
    if (im > 1e-8 * scale) throw Rejection("moebius_complex2: ill-conditioned (near-coincident roots)");
    mb.A = A.real();
    mb.B = B.real();
    mb.C = C.real();
    mb.D = D.real();
    mb.k2 = (k * k).real();
    cd prod = -lead / (k * k);
    for (cd xj : {cd(x1), cd(x2), x3, x4}) prod *= (cd(mb.A) - mb.C * xj);
    mb.c = prod.real();
    mb.n = mb.C * mb.C / (mb.D * mb.D);
    if (!(mb.c > 0) || !(mb.A * mb.D - mb.B * mb.C < 0) || !(mb.k2 < 0))
        throw InternalError("moebius_complex2: sign invariants violated");
    if (!(mb.n < 1)) {
        std::ostringstream os;
        os << "moebius_complex2: characteristic n = " << mb.n << " >= 1";
        throw Rejection(os.str());
    }
    return mb;
}

double int_W_complex2(const MoebiusComplex2& mb) {
    return 2.0 * (mb.B * mb.C - mb.A * mb.D) / (pi * std::sqrt(mb.c)) * elliptic_K(mb.k2);
}

double int_xW_complex2(const MoebiusComplex2& mb) {
    const double bcad = mb.B * mb.C - mb.A * mb.D;
    const double K = elliptic_K(mb.k2);
    double J = 2.0 * (mb.B / mb.D) * K;
    if (mb.C != 0.0) {
        // 2 bcad/(C D) (Pi - K) with Pi - K = (n/3) R_J
        J += 2.0 * bcad * mb.C / (3.0 * mb.D * mb.D * mb.D) *
             carlson_rj(0.0, 1.0 - mb.k2, 1.0, 1.0 - mb.n);
    }
    return bcad / (pi * std::sqrt(mb.c)) * J;
}

double xW_over_W_complex2(const MoebiusComplex2& mb) {
    return int_xW_complex2(mb) / int_W_complex2(mb);
}

}  // namespace r31

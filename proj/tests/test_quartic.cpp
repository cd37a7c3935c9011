#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "r31/portrait.hpp"
#include "r31/quartic.hpp"

using namespace r31;

namespace {

// Sign-change scan plus bisection on P(x) over (0,1). Only finds simple roots,
// which is all the random instances below need.
std::vector<double> scan_roots(double a1, double a2, double E, int n = 20000) {
    std::vector<double> out;
    auto P = [&](double x) { return quartic_x_eval(a1, a2, E, x); };
    double x0 = 0, f0 = P(0);
    for (int i = 1; i <= n; ++i) {
        const double x1 = double(i) / n, f1 = P(x1);
        if ((f0 < 0) != (f1 < 0) && f0 != 0) {
            double lo = x0, hi = x1, flo = f0;
            for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
                const double mid = 0.5 * (lo + hi), fm = P(mid);
                if ((fm < 0) == (flo < 0)) lo = mid, flo = fm;
                else hi = mid;
            }
            out.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    return out;
}

double min_gap(const std::vector<double>& xs) {
    double g = 1.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        g = std::min({g, xs[i], 1.0 - xs[i]});
        if (i) g = std::min(g, xs[i] - xs[i - 1]);
    }
    return g;
}

double line_residual(double a1, double a2, double E, double x, Line l) {
    const double a = 0.5 * a2 * x * x + a1 * x;
    const double b = std::sqrt(std::pow(1 - x, 3) * x);
    return std::abs((l == Line::Zero ? a + b : a - b) - E);
}

}  // namespace

TEST_CASE("coefficients reproduce the factored polynomial") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-3, 3), ux(0, 1);
    for (int n = 0; n < 200; ++n) {
        const double a1 = u(rng), a2 = u(rng), E = u(rng), x = ux(rng);
        const auto c = quartic_x_coeffs(a1, a2, E);
        const double poly = (((c[4] * x + c[3]) * x + c[2]) * x + c[1]) * x + c[0];
        CHECK(poly == doctest::Approx(quartic_x_eval(a1, a2, E, x)).epsilon(1e-12).scale(1));
    }
}

TEST_CASE("four real roots at a1 = 1, a2 = -2 between 0 and the saddle energy") {
    // E = 0.16 lies above the saddle (about 0.0805) and only has two roots
    CHECK(roots_x(1, -2, 0.16).count == 2);
    const QuarticRoots r = roots_x(1, -2, 0.05);
    REQUIRE(r.count == 4);
    CHECK_FALSE(r.from_oracle);
    const auto scan = scan_roots(1, -2, 0.05);
    REQUIRE(scan.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(r.xs[i] - scan[i]) < 1e-9);
        CHECK(line_residual(1, -2, 0.05, r.xs[i], r.line_of[i]) < 1e-10);
        // x = t^2 / (1 + t^2), with the sign of t fixing the line
        const double t = r.ts[i];
        CHECK(t * t / (1 + t * t) == doctest::Approx(r.xs[i]).epsilon(1e-12));
        CHECK((t < 0) == (r.line_of[i] == Line::Zero));
    }
    CHECK(r.delta_plus > 0);
    CHECK(r.delta_minus > 0);
    CHECK(r.s_star > 0);
}

TEST_CASE("Z10 line pattern") {
    const EffectiveParams p = make_params(-1, -2);
    const PortraitSummary s = portrait_summary(p);
    SUBCASE("positive energy: both roots on psi = 0") {
        const QuarticRoots r = roots_x(-1, -2, 0.5 * *s.e_max);
        REQUIRE(r.count == 2);
        CHECK(r.line_of[0] == Line::Zero);
        CHECK(r.line_of[1] == Line::Zero);
    }
    SUBCASE("negative energy: one root on each line") {
        const QuarticRoots r = roots_x(-1, -2, 0.5 * s.a_at_1);
        REQUIRE(r.count == 2);
        CHECK(r.line_of[0] != r.line_of[1]);
        for (int i = 0; i < 2; ++i) CHECK(line_residual(-1, -2, 0.5 * s.a_at_1, r.xs[i], r.line_of[i]) < 1e-10);
    }
}

TEST_CASE("energies outside the range of F have no roots") {
    for (auto [a1, a2] : {std::pair{-1.0, -2.0}, {1.0, 2.0}, {-1.0, 3.0}, {1.0, -3.0}}) {
        const PortraitSummary s = portrait_summary(make_params(a1, a2));
        CHECK(roots_x(a1, a2, s.e_plus + 0.1).count == 0);
        CHECK(roots_x(a1, a2, s.e_minus - 0.1).count == 0);
        CHECK(roots_oracle(a1, a2, s.e_plus + 0.1).count == 0);
    }
}

TEST_CASE("zero energy is rejected") { CHECK_THROWS_AS(roots_t(1, 1, 0.0), Rejection); }

TEST_CASE("leading coefficient special case") {
    // E = a2/2 + a1 makes the t^4 coefficient vanish
    const double a1 = -0.3, a2 = -1.4, E = 0.5 * a2 + a1;
    const QuarticRoots r = roots_x(a1, a2, E);
    CHECK(r.quadratic_case);
    for (int i = 0; i < r.count; ++i) CHECK(std::abs(quartic_x_eval(a1, a2, E, r.xs[i])) < 1e-10);
}

TEST_CASE("saddle energy gives a clustered double root") {
    const EffectiveParams p = make_params(-1, 3);
    const PortraitSummary s = portrait_summary(p);
    const double E = *s.e_sad;
    const QuarticRoots o = roots_oracle(-1, 3, E);
    double xs = 0;
    for (const auto& c : s.criticals)
        if (c.kind == CritKind::Saddle) xs = c.x;
    int close = 0;
    for (double x : o.xs) close += std::abs(x - xs) < 1e-6;
    CHECK(close >= 1);
    const QuarticRoots r = roots_x(-1, 3, E);
    CHECK(r.near_degenerate);
}

TEST_CASE("closed form agrees with the scan oracle on random instances") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-4, 4), w(0.02, 0.98);
    int checked = 0, four = 0;
    for (int n = 0; n < 3000; ++n) {
        const double a1 = u(rng), a2 = u(rng);
        if (is_degenerate(classify(a1, a2, 1e-6))) continue;
        const PortraitSummary s = portrait_summary(make_params(a1, a2));
        const double E = s.e_minus + w(rng) * (s.e_plus - s.e_minus);
        if (std::abs(E) < 1e-6) continue;
        const auto scan = scan_roots(a1, a2, E);
        if (min_gap(scan) < 1e-3) continue;
        const QuarticRoots r = roots_t(a1, a2, E);
        if (r.near_degenerate) continue;
        std::vector<double> xs = r.xs;
        std::sort(xs.begin(), xs.end());
        REQUIRE(xs.size() == scan.size());
        for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(xs[i] - scan[i]) < 1e-9);
        const QuarticRoots rx = roots_x(a1, a2, E);
        for (int i = 0; i < rx.count; ++i) CHECK(line_residual(a1, a2, E, rx.xs[i], rx.line_of[i]) < 1e-10);
        CHECK(rx.count % 2 == 0);
        ++checked;
        four += rx.count == 4;
    }
    CHECK(checked > 1000);
    CHECK(four > 20);
}

TEST_CASE("Z21plus between saddle and the upper bound has four roots") {
    const PortraitSummary s = portrait_summary(make_params(-1, 3));
    const double hi = std::min(s.a_at_1, *s.e_max);
    const double E = 0.5 * (*s.e_sad + hi);
    const QuarticRoots r = roots_x(-1, 3, E);
    CHECK(r.count == 4);
    // simple roots: derivative away from zero
    const auto c = quartic_x_coeffs(-1, 3, E);
    for (double x : r.xs) {
        const double d = ((4 * c[4] * x + 3 * c[3]) * x + 2 * c[2]) * x + c[1];
        CHECK(std::abs(d) > 1e-6);
    }
}

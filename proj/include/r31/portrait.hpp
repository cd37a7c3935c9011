#pragma once

#include <optional>
#include <string>
#include <vector>

#include "r31/bnf.hpp"
#include "r31/common.hpp"
#include "r31/quartic.hpp"

namespace r31 {

enum class Zone {
    Z10,
    Z01,
    Z12plus,
    Z12minus,
    Z21plus,
    Z21minus,
    // within tau_zone of a boundary curve
    OnLineA1A2,  // a2 = -a1
    OnG,         // a2 = g(a1)
    OnGneg,      // a2 = -g(-a1)
    OnGtilde,    // a2 = gtilde(a1), inside Z12 or Z21
};

const char* to_string(Zone z);
bool is_degenerate(Zone z);

enum class Region { I, II, III, IV };
const char* to_string(Region r);

double g_boundary(double a1);
double gneg_boundary(double a1);  // h(a1) = -g(-a1)
double gtilde_boundary(double a1);

Zone classify(double a1, double a2, double tau_zone = 1e-9);

enum class CritKind { Max, Min, Saddle };
const char* to_string(CritKind k);

struct CriticalPoint {
    Line line = Line::Zero;
    double psi = 0;
    double x = 0;
    CritKind kind = CritKind::Max;
    double energy = 0;
};

// Zeros of dF/dx on psi = 0 and psi = pi, ordered by line then x.
std::vector<CriticalPoint> critical_points(const EffectiveParams& p);

struct RegionInfo {
    Region region = Region::I;
    double e_lo = 0, e_hi = 0;
    // "0-0", "pi-pi" or "mixed": the lines met by the bounding roots
    std::string lines;
};

struct PortraitSummary {
    Zone zone = Zone::Z10;
    double a1 = 0, a2 = 0;
    std::vector<CriticalPoint> criticals;
    std::optional<double> e_max, e_min, e_sad;
    double e_plus = 0, e_minus = 0;
    double a_at_1 = 0;  // a(1) = a2/2 + a1, the limit of F at x = 1
    std::vector<RegionInfo> regions;  // empty for degenerate zones

    const RegionInfo* find(Region r) const;
};

PortraitSummary portrait_summary(const EffectiveParams& p, double tau_zone = 1e-9);

// Throws Rejection when E is within tau_E of a separatrix or critical energy.
void check_noncritical(const PortraitSummary& s, double E, double tau_E);
double default_tau_E(const PortraitSummary& s);

// Bounding roots of one connected level curve.
struct RootPair {
    double x_lo = 0, x_hi = 0;
    Line line_lo = Line::Zero, line_hi = Line::Zero;
    bool upper = false;  // (x3,x4) of a four-root configuration
};

RootPair select_pair(const QuarticRoots& roots, Region region);

// Region of the level curve at energy E through the point (line, x).
Region resolve_region(const PortraitSummary& s, const QuarticRoots& roots, double E, double x);

struct LevelCurve {
    Region region = Region::I;
    double E = 0;
    std::vector<double> x, psi;
};

LevelCurve level_curve(const EffectiveParams& p, double E, Region region, int npts = 512,
                       double tau_E = -1);

}  // namespace r31
